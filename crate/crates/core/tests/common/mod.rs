#![allow(dead_code)]

pub mod strategies;

use std::collections::BTreeMap;

use engel_core::framecalc::{FramedSpace, VecField};
use engel_core::trigring::rational::parse_rational;
use engel_core::trigring::TrigScalar;
use num_rational::BigRational;

/// `[("X1", "-sin(t)"), ("X3", "2")]` in the frame of `space`.
pub fn vf(space: &FramedSpace, entries: &[(&str, &str)]) -> VecField {
    let mut v = VecField::zero();
    for (name, src) in entries {
        let i = space
            .frame_index(name)
            .unwrap_or_else(|| panic!("no frame field {name}"));
        let s = TrigScalar::parse(src, space.coord_names()).expect("scalar parses");
        v.set(i, &v[i] + &s);
    }
    v
}

pub fn params(pairs: &[(&str, &str)]) -> BTreeMap<String, BigRational> {
    pairs
        .iter()
        .map(|(k, v)| (k.to_string(), parse_rational(v).expect("rational")))
        .collect()
}

pub fn show(v: &VecField, space: &FramedSpace) -> String {
    v.display(space.frame_names(), space.coord_names())
        .to_string()
}
