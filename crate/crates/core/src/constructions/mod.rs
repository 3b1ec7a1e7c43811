//! Explicit witness sets with prescribed symmetric functions, and solution
//! counts of diagonal quadratic forms.
//!
//! Every generator checks its own output before returning it: elements are
//! pairwise distinct, lie in the stated domain, and hit the target exactly.
//! A failed check is reported as [`Error::InconsistencyDetected`].

mod discriminant;
mod pair_products;
mod power_sums;
mod quadratic_forms;
mod sums;

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::poly::SymmetricProfile;

pub use discriminant::{witness_discriminant, DiscriminantParams};
pub use pair_products::{
    all_units_pair_products, witness_pair_products, witness_pair_products_zero,
    witness_pair_products_zero_weak, PairMode,
};
pub use power_sums::{witness_power_sums, witness_power_sums_divisible};
pub use quadratic_forms::{brute_force_count, QuadraticForm};
pub use sums::witness_sum;

/// Where witness elements are drawn from.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Domain {
    /// All of `F_q`.
    Field,
    /// The nonzero elements `F_q*`.
    Units,
}

impl Domain {
    pub fn elements(self, field: &Field) -> Vec<Elem> {
        match self {
            Domain::Field => field.elements().collect(),
            Domain::Units => field.units().collect(),
        }
    }

    pub fn contains(self, a: Elem) -> bool {
        self == Domain::Field || !a.is_zero()
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Domain::Field => "field",
            Domain::Units => "units",
        })
    }
}

impl FromStr for Domain {
    type Err = Error;

    fn from_str(s: &str) -> Result<Domain> {
        match s {
            "field" | "all" => Ok(Domain::Field),
            "units" | "nonzero" => Ok(Domain::Units),
            _ => Err(Error::OutOfRange(format!(
                "unknown domain {s:?} (expected field or units)"
            ))),
        }
    }
}

/// The available generators, by what they construct.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Construction {
    /// `t` distinct elements with a given sum.
    Sum,
    /// `t` nonzero elements with `e2 = c`, characteristic two.
    PairProducts,
    /// `t` nonzero elements with `sum_{i<=j} y_i y_j = c`, characteristic two.
    PairProductsWeak,
    /// All of `F_q*`, whose `e2` vanishes.
    PairProductsAll,
    /// `t` nonzero elements with `e2 = 0`.
    PairProductsZero,
    /// `t > q/2` nonzero elements with `sum_{i<=j} y_i y_j = 0`.
    PairProductsZeroWeak,
    /// `t` nonzero elements with `m^2 - r n` in a shifted set of squares.
    Discriminant,
    /// `t` elements with sum `0` and sum of squares `zeta`.
    PowerSums,
    /// As [`Construction::PowerSums`], for `p | t`.
    PowerSumsDivisible,
}

impl Construction {
    pub const ALL: [Construction; 9] = [
        Construction::Sum,
        Construction::PairProducts,
        Construction::PairProductsWeak,
        Construction::PairProductsAll,
        Construction::PairProductsZero,
        Construction::PairProductsZeroWeak,
        Construction::Discriminant,
        Construction::PowerSums,
        Construction::PowerSumsDivisible,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Construction::Sum => "sum",
            Construction::PairProducts => "pair-products",
            Construction::PairProductsWeak => "pair-products-weak",
            Construction::PairProductsAll => "pair-products-all",
            Construction::PairProductsZero => "pair-products-zero",
            Construction::PairProductsZeroWeak => "pair-products-zero-weak",
            Construction::Discriminant => "discriminant",
            Construction::PowerSums => "power-sums",
            Construction::PowerSumsDivisible => "power-sums-divisible",
        }
    }
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Construction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Construction> {
        let key = s.to_ascii_lowercase().replace('_', "-");
        Construction::ALL
            .into_iter()
            .find(|c| c.name() == key)
            .ok_or_else(|| {
                let names: Vec<_> = Construction::ALL.iter().map(|c| c.name()).collect();
                Error::OutOfRange(format!(
                    "unknown construction {s:?}; expected one of {}",
                    names.join(", ")
                ))
            })
    }
}

/// Sorts `elements` and checks distinctness, domain membership and `target`.
pub(crate) fn verified(
    field: &Field,
    mut elements: Vec<Elem>,
    domain: Domain,
    what: &str,
    target: impl Fn(&SymmetricProfile) -> bool,
) -> Result<Vec<Elem>> {
    elements.sort_unstable();
    let distinct = elements.windows(2).all(|w| w[0] != w[1]);
    let inside = elements
        .iter()
        .all(|&a| field.contains(a) && domain.contains(a));
    if !distinct || !inside || !target(&SymmetricProfile::of(field, &elements)) {
        return Err(Error::InconsistencyDetected(format!(
            "{what}: construction produced an invalid set {:?}",
            elements.iter().map(|e| e.0).collect::<Vec<_>>()
        )));
    }
    Ok(elements)
}

/// `1 + g + ... + g^(len-1)`.
pub(crate) fn geometric_sum(field: &Field, len: usize) -> Elem {
    field.sum((0..len as u64).map(|i| field.gen_pow(i)))
}
