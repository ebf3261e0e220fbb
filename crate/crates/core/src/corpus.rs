//! The shipped knot, representation and monodromy files, embedded at build time.

use crate::error::Result;
use crate::foxcalc::{Presentation, Representation};
use crate::mapping_torus::MonodromyInput;

macro_rules! data {
    ($path:literal) => {
        include_str!(concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/", $path))
    };
}

pub const KNOTS: &[(&str, &str)] = &[
    ("unknot", data!("knots/unknot.toml")),
    ("trefoil", data!("knots/trefoil.toml")),
    ("figure_eight", data!("knots/figure_eight.toml")),
    ("5_1", data!("knots/5_1.toml")),
    ("5_2", data!("knots/5_2.toml")),
];

pub const REPS: &[(&str, &str)] = &[
    ("trivial", data!("reps/trivial.toml")),
    ("trivial2", data!("reps/trivial2.toml")),
    ("s3", data!("reps/s3.toml")),
    ("s3_twisted", data!("reps/s3_twisted.toml")),
    ("d5", data!("reps/d5.toml")),
    ("d5_twisted", data!("reps/d5_twisted.toml")),
    ("d7", data!("reps/d7.toml")),
    ("d7_twisted", data!("reps/d7_twisted.toml")),
    ("zeta3", data!("reps/zeta3.toml")),
    ("zeta4", data!("reps/zeta4.toml")),
];

/// Which representations are run against which knot.
pub const PAIRS: &[(&str, &[&str])] = &[
    ("unknot", &["trivial", "trivial2"]),
    ("trefoil", &["trivial", "trivial2", "s3", "s3_twisted", "zeta3", "zeta4"]),
    ("figure_eight", &["trivial", "trivial2", "d5", "d5_twisted", "zeta3"]),
    ("5_1", &["trivial", "d5", "d5_twisted", "zeta3"]),
    ("5_2", &["trivial", "trivial2", "d7", "d7_twisted", "zeta4"]),
];

pub const MONODROMY: &[(&str, &str)] = &[
    ("identity", data!("monodromy/identity.toml")),
    ("scalar_two", data!("monodromy/scalar_two.toml")),
    ("minus_identity", data!("monodromy/minus_identity.toml")),
    ("jordan", data!("monodromy/jordan.toml")),
    ("cyclotomic", data!("monodromy/cyclotomic.toml")),
];

fn lookup<'a>(table: &[(&str, &'a str)], name: &str) -> &'a str {
    table.iter().find(|(n, _)| *n == name).map(|(_, t)| *t).expect("corpus entry")
}

pub fn knot(name: &str) -> Result<Presentation> {
    Presentation::from_toml(lookup(KNOTS, name))
}

pub fn rep(name: &str) -> Result<Representation> {
    Representation::from_toml(lookup(REPS, name))
}

/// Every (knot, representation) pair of the corpus, in a fixed order.
pub fn knot_pairs() -> Result<Vec<(String, String, Presentation, Representation)>> {
    let mut out = Vec::new();
    for (k, reps) in PAIRS {
        for r in *reps {
            out.push((k.to_string(), r.to_string(), knot(k)?, rep(r)?));
        }
    }
    Ok(out)
}

pub fn monodromy() -> Result<Vec<(String, MonodromyInput)>> {
    MONODROMY.iter().map(|(n, t)| Ok((n.to_string(), MonodromyInput::from_toml(t)?))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_file_parses() {
        assert_eq!(knot_pairs().unwrap().len(), 22);
        assert_eq!(monodromy().unwrap().len(), 5);
    }
}
