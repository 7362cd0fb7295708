use crate::trigring::TrigScalar;

use super::{FrameError, FramedSpace, VecField, DIM};

/// An almost complex structure given by the images `J E_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexStructure {
    columns: [VecField; DIM],
}

impl ComplexStructure {
    /// Builds `J` from `J E_i = columns[i]`, rejecting it unless `J² = -1`
    /// holds in normal form.
    pub fn new(columns: [VecField; DIM]) -> Result<Self, FrameError> {
        let j = Self { columns };
        for i in 0..DIM {
            let jj = j.apply(&j.apply(&VecField::frame(i)));
            if !(&jj + &VecField::frame(i)).is_zero() {
                return Err(FrameError::NotComplex(i));
            }
        }
        Ok(j)
    }

    /// Skips the `J² = -1` check; used to exercise the precondition gates.
    pub fn new_unchecked(columns: [VecField; DIM]) -> Self {
        Self { columns }
    }

    /// The standard pairing `J E_1 = E_2`, `J E_3 = E_4`.
    pub fn standard() -> Self {
        let e = VecField::frame;
        Self::new([e(1), -&e(0), e(3), -&e(2)]).expect("standard J squares to -1")
    }

    pub fn column(&self, i: usize) -> &VecField {
        &self.columns[i]
    }

    /// Matrix entry `(J E_i)^k`.
    pub fn entry(&self, k: usize, i: usize) -> &TrigScalar {
        &self.columns[i][k]
    }

    pub fn apply(&self, v: &VecField) -> VecField {
        let mut out = VecField::zero();
        for i in 0..DIM {
            if !v[i].is_identically_zero() {
                out = &out + &self.columns[i].mul_scalar(&v[i]);
            }
        }
        out
    }

    /// `J² + 1`, column by column; zero for a genuine complex structure.
    pub fn square_defect(&self) -> Vec<VecField> {
        (0..DIM)
            .map(|i| &self.apply(&self.apply(&VecField::frame(i))) + &VecField::frame(i))
            .collect()
    }

    /// `N(v,w) = [Jv,Jw] - J[Jv,w] - J[v,Jw] - [v,w]`.
    pub fn nijenhuis(&self, v: &VecField, w: &VecField, space: &FramedSpace) -> VecField {
        let (jv, jw) = (self.apply(v), self.apply(w));
        let mixed = &space.bracket(&jv, w) + &space.bracket(v, &jw);
        &(&space.bracket(&jv, &jw) - &self.apply(&mixed)) - &space.bracket(v, w)
    }

    /// Nijenhuis tensor on all frame pairs `i < j`.
    pub fn nijenhuis_table(&self, space: &FramedSpace) -> Vec<((usize, usize), VecField)> {
        let mut out = Vec::new();
        for i in 0..DIM {
            for j in (i + 1)..DIM {
                let n = self.nijenhuis(&VecField::frame(i), &VecField::frame(j), space);
                out.push(((i, j), n));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_structure_squares_to_minus_one() {
        let j = ComplexStructure::standard();
        let v = VecField::from_ints(&[(0, 1), (2, 1)]);
        assert_eq!(j.apply(&v), VecField::from_ints(&[(1, 1), (3, 1)]));
        assert_eq!(j.apply(&j.apply(&v)), -&v);
    }

    #[test]
    fn rejects_non_complex_matrix() {
        let e = VecField::frame;
        let err = ComplexStructure::new([e(1), e(0), e(3), -&e(2)]);
        assert_eq!(err, Err(FrameError::NotComplex(0)));
    }

    #[test]
    fn abelian_nijenhuis_vanishes() {
        let s = FramedSpace::new(["E1", "E2", "E3", "E4"], vec![]).unwrap();
        let j = ComplexStructure::standard();
        assert!(j.nijenhuis_table(&s).iter().all(|(_, n)| n.is_zero()));
    }
}
