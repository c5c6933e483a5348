//! Bounds for other crossing-free structures derived from an exponential
//! base for the number of triangulations.

use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::number::{decimal_ceil, mixed, rational, Fraction, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BoundsError {
    #[error("triangulation base must be at least 1, got {0}")]
    BaseBelowOne(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantity {
    /// Triangulations.
    Tr,
    /// Crossing-free spanning cycles.
    Sc,
    /// Planar graphs and connected planar graphs.
    PgCg,
    /// Crossing-free spanning trees.
    St,
    /// Cycle-free graphs.
    Cf,
}

impl Quantity {
    pub const ALL: [Quantity; 5] = [Quantity::Tr, Quantity::Sc, Quantity::PgCg, Quantity::St, Quantity::Cf];

    pub fn name(self) -> &'static str {
        match self {
            Quantity::Tr => "tr",
            Quantity::Sc => "sc",
            Quantity::PgCg => "pg_cg",
            Quantity::St => "st",
            Quantity::Cf => "cf",
        }
    }

    /// Per-triangulation multiplier as an exact rational.
    pub fn multiplier(self) -> Rational {
        match self {
            Quantity::Tr => rational(1, 1),
            Quantity::Sc => rational(23403, 10000),
            Quantity::PgCg => rational(798, 100),
            Quantity::St => rational(16, 3),
            Quantity::Cf => rational(27, 4),
        }
    }

    pub fn provenance(self) -> &'static str {
        match self {
            Quantity::Tr => "triangulation base (input)",
            Quantity::Sc => "spanning cycles per triangulation: 30^(1/4) ~ 2.3403",
            Quantity::PgCg => "planar graphs per triangulation: 7.98",
            Quantity::St => "spanning trees of a planar graph: 5 1/3",
            Quantity::Cf => "forests per triangulation: binom(3n, n)^(1/n) -> 27/4",
        }
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundEntry {
    pub quantity: Quantity,
    /// Exponential base: the structure count is at most `base^n` up to
    /// polynomial factors.
    pub base: Rational,
    pub multiplier: Rational,
    pub provenance: &'static str,
}

impl BoundEntry {
    /// Rounded up to two decimals, as tabulated.
    pub fn display(&self) -> String {
        decimal_ceil(&self.base, 2)
    }

    pub fn to_json(&self) -> BoundJson {
        BoundJson {
            quantity: self.quantity,
            base: Fraction::from(&self.base),
            exact: mixed(&self.base),
            display: self.display(),
            multiplier: Fraction::from(&self.multiplier),
            provenance: self.provenance.to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundJson {
    pub quantity: Quantity,
    pub base: Fraction,
    pub exact: String,
    pub display: String,
    pub multiplier: Fraction,
    pub provenance: String,
}

/// One entry per quantity, `base = tr_base · multiplier`, with the decimal
/// multipliers read as exact decimal fractions.
pub fn derived_bounds(tr_base: &Rational) -> Result<Vec<BoundEntry>, BoundsError> {
    if *tr_base < rational(1, 1) {
        return Err(BoundsError::BaseBelowOne(mixed(tr_base)));
    }
    Ok(Quantity::ALL
        .iter()
        .map(|&q| BoundEntry {
            quantity: q,
            base: tr_base * q.multiplier(),
            multiplier: q.multiplier(),
            provenance: q.provenance(),
        })
        .collect())
}

/// `tr_base · 30^{1/4}` to exactly six decimals, the spanning-cycle base without
/// the rounded literal.
pub fn symbolic_sc(tr_base: &Rational) -> String {
    // floor((30 · tr_base^4 · 10^32)^{1/4}) = floor(value · 10^8)
    let x = tr_base * tr_base * tr_base * tr_base * rational(30, 1);
    let scaled = (x * Rational::from_integer(BigInt::from(10u32).pow(32))).floor().to_integer();
    let micro = (scaled.nth_root(4) + BigInt::from(50)) / BigInt::from(100);
    let (whole, frac) = (&micro / BigInt::from(1_000_000), &micro % BigInt::from(1_000_000));
    format!("{whole}.{frac:0>6}")
}

/// `quantity,base,exact,multiplier,provenance` rows, one per quantity.
pub fn to_csv(entries: &[BoundEntry]) -> String {
    let mut out = String::from("quantity,base,exact,multiplier,provenance\n");
    for e in entries {
        out.push_str(&format!(
            "{},{},{},{},\"{}\"\n",
            e.quantity,
            e.display(),
            mixed(&e.base),
            mixed(&e.multiplier),
            e.provenance
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn entry(entries: &[BoundEntry], q: Quantity) -> &BoundEntry {
        entries.iter().find(|e| e.quantity == q).unwrap()
    }

    #[test]
    fn base_thirty() {
        let b = derived_bounds(&rational(30, 1)).unwrap();
        assert_eq!(entry(&b, Quantity::Tr).display(), "30");
        assert_eq!(entry(&b, Quantity::St).base, rational(160, 1));
        assert_eq!(entry(&b, Quantity::Cf).base, rational(405, 2));
        assert_eq!(entry(&b, Quantity::Cf).display(), "202.5");
        assert_eq!(entry(&b, Quantity::PgCg).display(), "239.4");
        assert_eq!(entry(&b, Quantity::Sc).base, rational(70209, 1000));
        assert_eq!(entry(&b, Quantity::Sc).display(), "70.21");
    }

    #[test]
    fn base_forty_three() {
        let b = derived_bounds(&rational(43, 1)).unwrap();
        assert_eq!(mixed(&entry(&b, Quantity::St).base), "229 1/3");
        assert_eq!(entry(&b, Quantity::PgCg).display(), "343.14");
        assert_eq!(entry(&b, Quantity::Cf).display(), "290.25");
    }

    #[test]
    fn base_one_gives_multipliers() {
        for e in derived_bounds(&rational(1, 1)).unwrap() {
            assert_eq!(e.base, e.multiplier);
        }
        assert!(derived_bounds(&rational(1, 2)).is_err());
    }

    #[test]
    fn symbolic_mode() {
        assert_eq!(symbolic_sc(&rational(1, 1)), "2.340347");
        assert_eq!(symbolic_sc(&rational(30, 1)), "70.210420");
    }

    #[test]
    fn csv_rows() {
        let csv = to_csv(&derived_bounds(&rational(30, 1)).unwrap());
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 6);
        assert!(lines[4].starts_with("st,160,160,5 1/3,"));
    }

    proptest! {
        #[test]
        fn monotone_in_base(a in 1i64..10_000, b in 1i64..10_000, d in 1i64..100) {
            let (lo, hi) = (a.min(b), a.max(b));
            let x = derived_bounds(&rational(lo + d, d)).unwrap();
            let y = derived_bounds(&rational(hi + d, d)).unwrap();
            for (e, f) in x.iter().zip(&y) {
                prop_assert!(e.base <= f.base);
            }
        }
    }
}
