use crate::trigring::{Frequency, TrigScalar};

use super::{FrameError, VecField, DIM};

/// A formal coordinate with an optional fundamental period.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoordSpec {
    pub name: String,
    pub period: Option<Frequency>,
}

impl CoordSpec {
    pub fn new(name: &str, period: Option<Frequency>) -> Self {
        Self {
            name: name.to_string(),
            period,
        }
    }
}

/// A parallelized 4-manifold: frame `E_1..E_4`, structure functions
/// `[E_i,E_j] = Σ_k f^k_ij E_k` and the derivation table `D_ij = E_i(x_j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FramedSpace {
    frame: Vec<String>,
    coords: Vec<CoordSpec>,
    coord_names: Vec<String>,
    structure: Vec<Vec<VecField>>,
    derivations: Vec<Vec<TrigScalar>>,
}

impl FramedSpace {
    /// Starts a space with all brackets and derivations zero.
    pub fn new(frame: [&str; DIM], coords: Vec<CoordSpec>) -> Result<Self, FrameError> {
        if coords.len() > DIM {
            return Err(FrameError::Invalid(format!(
                "at most {DIM} coordinates are supported, got {}",
                coords.len()
            )));
        }
        let mut seen = std::collections::BTreeSet::new();
        for name in frame
            .iter()
            .copied()
            .chain(coords.iter().map(|c| c.name.as_str()))
        {
            if !seen.insert(name.to_string()) {
                return Err(FrameError::Invalid(format!("duplicate name '{name}'")));
            }
        }
        let coord_names = coords.iter().map(|c| c.name.clone()).collect();
        Ok(Self {
            frame: frame.iter().map(|s| s.to_string()).collect(),
            structure: vec![vec![VecField::zero(); DIM]; DIM],
            derivations: vec![vec![TrigScalar::zero(); coords.len()]; DIM],
            coords,
            coord_names,
        })
    }

    /// Sets `[E_i,E_j] = value` and `[E_j,E_i] = -value`.
    pub fn set_bracket(&mut self, i: usize, j: usize, value: VecField) -> Result<(), FrameError> {
        if i == j {
            if !value.is_zero() {
                return Err(FrameError::Invalid(format!(
                    "[{0},{0}] must vanish",
                    self.frame[i]
                )));
            }
            return Ok(());
        }
        self.check_scalars(value.coeffs())?;
        self.structure[j][i] = -&value;
        self.structure[i][j] = value;
        Ok(())
    }

    /// Sets `E_i(x_j) = value`.
    pub fn set_derivation(
        &mut self,
        i: usize,
        j: usize,
        value: TrigScalar,
    ) -> Result<(), FrameError> {
        self.check_scalars(std::slice::from_ref(&value))?;
        self.derivations[i][j] = value;
        Ok(())
    }

    fn check_scalars(&self, scalars: &[TrigScalar]) -> Result<(), FrameError> {
        for s in scalars {
            if s.arity() > self.coords.len() {
                return Err(FrameError::Invalid(format!(
                    "scalar uses undeclared coordinate index {}",
                    s.arity() - 1
                )));
            }
        }
        Ok(())
    }

    pub fn frame_names(&self) -> &[String] {
        &self.frame
    }

    pub fn coords(&self) -> &[CoordSpec] {
        &self.coords
    }

    pub fn coord_names(&self) -> &[String] {
        &self.coord_names
    }

    pub fn frame_index(&self, name: &str) -> Option<usize> {
        self.frame.iter().position(|f| f == name)
    }

    pub fn coord_index(&self, name: &str) -> Option<usize> {
        self.coord_names.iter().position(|c| c == name)
    }

    /// `[E_i, E_j]`.
    pub fn frame_bracket(&self, i: usize, j: usize) -> &VecField {
        &self.structure[i][j]
    }

    pub fn derivation(&self, i: usize, j: usize) -> &TrigScalar {
        &self.derivations[i][j]
    }

    /// `true` when no structure function depends on a coordinate.
    pub fn has_constant_structure(&self) -> bool {
        self.structure
            .iter()
            .flatten()
            .flat_map(|v| v.coeffs().iter())
            .all(|s| s.as_constant().is_some())
    }

    /// `E_i(s) = Σ_j ∂s/∂x_j · D_ij`.
    pub fn frame_derivative(&self, i: usize, s: &TrigScalar) -> TrigScalar {
        let mut out = TrigScalar::zero();
        for c in s.coordinates() {
            let d = &self.derivations[i][c];
            if !d.is_identically_zero() {
                out = &out + &(&s.differentiate(c) * d);
            }
        }
        out
    }

    /// Directional derivative `v(s) = Σ_i v^i E_i(s)`.
    pub fn derivative(&self, v: &VecField, s: &TrigScalar) -> TrigScalar {
        let mut out = TrigScalar::zero();
        for i in 0..DIM {
            if !v[i].is_identically_zero() {
                out = &out + &(&v[i] * &self.frame_derivative(i, s));
            }
        }
        out
    }

    /// Lie bracket via Leibniz and the structure table.
    pub fn bracket(&self, v: &VecField, w: &VecField) -> VecField {
        let mut out: [TrigScalar; DIM] =
            std::array::from_fn(|k| &self.derivative(v, &w[k]) - &self.derivative(w, &v[k]));
        for i in 0..DIM {
            for j in (i + 1)..DIM {
                let m = &(&v[i] * &w[j]) - &(&v[j] * &w[i]);
                if m.is_identically_zero() {
                    continue;
                }
                for (k, o) in out.iter_mut().enumerate() {
                    let f = &self.structure[i][j][k];
                    if !f.is_identically_zero() {
                        *o = &*o + &(&m * f);
                    }
                }
            }
        }
        VecField::new(out)
    }

    /// Cyclic sums `Σ [E_i,[E_j,E_k]]` for all triples `i<j<k`.
    pub fn jacobiators(&self) -> Vec<((usize, usize, usize), VecField)> {
        let mut out = Vec::new();
        for i in 0..DIM {
            for j in (i + 1)..DIM {
                for k in (j + 1)..DIM {
                    let e = VecField::frame;
                    let s = &(&self.bracket(&e(i), &self.bracket(&e(j), &e(k)))
                        + &self.bracket(&e(j), &self.bracket(&e(k), &e(i))))
                        + &self.bracket(&e(k), &self.bracket(&e(i), &e(j)));
                    out.push(((i, j, k), s));
                }
            }
        }
        out
    }

    /// Compatibility of the derivation table with the brackets:
    /// `E_i(D_jm) - E_j(D_im) - Σ_k f^k_ij D_km`, per `(i, j, m)`.
    pub fn derivation_defects(&self) -> Vec<((usize, usize, usize), TrigScalar)> {
        let mut out = Vec::new();
        for i in 0..DIM {
            for j in (i + 1)..DIM {
                for m in 0..self.coords.len() {
                    let mut r = &self.frame_derivative(i, &self.derivations[j][m])
                        - &self.frame_derivative(j, &self.derivations[i][m]);
                    for k in 0..DIM {
                        r = &r - &(&self.structure[i][j][k] * &self.derivations[k][m]);
                    }
                    out.push(((i, j, m), r));
                }
            }
        }
        out
    }
}
