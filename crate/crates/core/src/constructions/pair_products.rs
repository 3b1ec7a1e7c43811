use super::{geometric_sum, verified, Domain};
use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::poly::SymmetricProfile;

/// `Strict` targets `sum_{i<j} y_i y_j`, `Weak` targets `sum_{i<=j} y_i y_j`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum PairMode {
    Strict,
    Weak,
}

impl PairMode {
    fn value(self, field: &Field, p: &SymmetricProfile) -> Elem {
        match self {
            PairMode::Strict => p.e2,
            PairMode::Weak => p.weak_e2(field),
        }
    }
}

fn one_minus_gpow(field: &Field, i: u64) -> Elem {
    field.sub(Elem::ONE, field.gen_pow(i))
}

/// Product of `factors` over `(1 - g)(1 - g^2)`, refusing a zero constant.
fn ratio(field: &Field, factors: &[Elem]) -> Result<Elem> {
    let den = field.mul(one_minus_gpow(field, 1), one_minus_gpow(field, 2));
    let num = factors.iter().fold(Elem::ONE, |acc, &x| field.mul(acc, x));
    if num.is_zero() || den.is_zero() {
        return Err(Error::DegenerateConstant(format!(
            "pair-product constant vanishes in GF({})",
            field.q()
        )));
    }
    field.div(num, den)
}

/// `t` distinct nonzero elements `sigma g^(i-1)` with pair-product sum `c`, `p = 2`.
///
/// `sum_{i<j} g^(i+j)` and `sum_{i<=j} g^(i+j)` over `0..t` have closed forms
/// `K`, and `sigma` is the square root of `c / K`.
pub fn witness_pair_products(
    field: &Field,
    t: usize,
    c: Elem,
    mode: PairMode,
) -> Result<Vec<Elem>> {
    if field.p() != 2 {
        return Err(Error::OutOfRange(
            "pair products with c != 0 need characteristic 2".into(),
        ));
    }
    if c.is_zero() || !field.contains(c) {
        return Err(Error::OutOfRange(format!(
            "target must be a nonzero field element, got {}",
            c.0
        )));
    }
    let q = field.q() as usize;
    let max = match mode {
        PairMode::Strict => q.saturating_sub(2),
        PairMode::Weak => q.saturating_sub(3),
    };
    if t < 2 || t > max {
        return Err(Error::OutOfRange(format!("t = {t} must lie in 2..={max}")));
    }
    let t64 = t as u64;
    let k = match mode {
        PairMode::Strict => ratio(
            field,
            &[
                field.gen_pow(1),
                one_minus_gpow(field, t64 - 1),
                one_minus_gpow(field, t64),
            ],
        )?,
        PairMode::Weak => ratio(
            field,
            &[one_minus_gpow(field, t64 + 1), one_minus_gpow(field, t64)],
        )?,
    };
    let sigma = field.sqrt_char2(field.div(c, k)?)?;
    let out = (0..t64)
        .map(|i| field.mul(sigma, field.gen_pow(i)))
        .collect();
    verified(field, out, Domain::Units, "pair-products", |p| {
        p.t == t && mode.value(field, p) == c
    })
}

/// All of `F_q*`: its pair-product sum is zero once `q > 3`.
pub fn all_units_pair_products(field: &Field) -> Result<Vec<Elem>> {
    if field.q() <= 3 {
        return Err(Error::OutOfRange(format!("needs q > 3, got {}", field.q())));
    }
    verified(
        field,
        field.units().collect(),
        Domain::Units,
        "pair-products-all",
        |p| p.e2.is_zero(),
    )
}

fn check_zero_divisibility(field: &Field, t: usize, what: &str) -> Result<()> {
    let ok = if field.p() == 2 {
        t.is_multiple_of(4)
    } else {
        t.is_multiple_of(field.p() as usize)
    };
    if ok {
        Ok(())
    } else {
        let need = if field.p() == 2 { 4 } else { field.p() };
        Err(Error::OutOfRange(format!(
            "{what} must be divisible by {need}, got {t}"
        )))
    }
}

/// `t` distinct nonzero elements with `e2 = 0`, for `t < q/2 - 1` and
/// `4 | t` (`p = 2`) or `p | t` (`p` odd).
///
/// Shifts `phi, 1, g, ..., g^(t-2)` by a common `z`; with `M1`, `M2` the first
/// two symmetric functions of the progression, `z = (phi M1 + M2)/(phi + M1)`
/// makes `e2` vanish. `phi` is the smallest unit avoiding every collision.
pub fn witness_pair_products_zero(field: &Field, t: usize) -> Result<Vec<Elem>> {
    check_zero_divisibility(field, t, "t")?;
    let q = field.q() as usize;
    if t == 0 || 2 * t + 2 >= q {
        return Err(Error::OutOfRange(format!(
            "t = {t} must satisfy 1 <= t < q/2 - 1 (q = {q})"
        )));
    }
    let g = |i: usize| field.gen_pow(i as u64);
    let m1 = geometric_sum(field, t - 1);
    let m2 = {
        let prog: Vec<Elem> = (0..t - 1).map(g).collect();
        SymmetricProfile::of(field, &prog).e2
    };
    let mut forbidden = vec![field.neg(m1)];
    for i in 2..=t {
        let gi = g(i - 2);
        forbidden.push(gi);
        let den = field.add(gi, m1);
        if !den.is_zero() {
            let num = field.add(m2, field.mul(gi, m1));
            forbidden.push(field.neg(field.div(num, den)?));
        }
    }
    let quad_ok = |phi: Elem| {
        let v = field.add(
            field.mul(phi, phi),
            field.add(field.scale_int(2, field.mul(phi, m1)), m2),
        );
        !v.is_zero()
    };
    let phi = field
        .units()
        .find(|&phi| !forbidden.contains(&phi) && quad_ok(phi))
        .ok_or_else(|| Error::SearchExhausted(format!("no admissible shift for t = {t}")))?;
    let z = field.div(field.add(field.mul(phi, m1), m2), field.add(phi, m1))?;
    let mut out = vec![field.add(z, phi)];
    out.extend((2..=t).map(|i| field.add(z, g(i - 2))));
    verified(field, out, Domain::Units, "pair-products-zero", |p| {
        p.t == t && p.e2.is_zero()
    })
}

/// `t > q/2` distinct nonzero elements with `sum_{i<=j} y_i y_j = 0`, for
/// `4 | q-1-t` (`p = 2`) or `p | q-1-t`: the complement in `F_q*` of a
/// zero-`e2` set of size `q - 1 - t`.
pub fn witness_pair_products_zero_weak(field: &Field, t: usize) -> Result<Vec<Elem>> {
    let q = field.q() as usize;
    if 2 * t <= q || t > q - 1 || q <= 3 {
        return Err(Error::OutOfRange(format!(
            "t = {t} must satisfy q/2 < t <= q - 1 (q = {q})"
        )));
    }
    let rest_len = q - 1 - t;
    check_zero_divisibility(field, rest_len, "q - 1 - t")?;
    let rest = if rest_len == 0 {
        Vec::new()
    } else {
        witness_pair_products_zero(field, rest_len)?
    };
    let out = field.units().filter(|x| !rest.contains(x)).collect();
    verified(field, out, Domain::Units, "pair-products-zero-weak", |p| {
        p.t == t && p.weak_e2(field).is_zero()
    })
}
