use super::{verified, Domain};
use crate::error::{Error, Result};
use crate::field::{Elem, Field};

/// `t` distinct elements with `sum y = 0` and `sum y^2 = zeta`, `p` odd,
/// `3 < t < q - 3`, `t` not `(q -+ 1)/2`.
///
/// Even `t` below `(q-1)/2` uses `±alpha, ±y, ±y g, ..., ±y g^(t/2-2)`, which
/// sums to zero with square sum `2(alpha^2 + y^2 (1 - g^(t-2))/(1 - g^2))`;
/// `(alpha, y)` is the first admissible solution in ascending order. Odd `t`
/// adds `0` to an even set. Sizes past `(q+1)/2` take the complement of a set
/// for `-zeta`, since both power sums vanish over all of `F_q`.
pub fn witness_power_sums(field: &Field, t: usize, zeta: Elem) -> Result<Vec<Elem>> {
    if field.p() == 2 {
        return Err(Error::OutOfRange(
            "power-sum witnesses need odd characteristic".into(),
        ));
    }
    if zeta.is_zero() || !field.contains(zeta) {
        return Err(Error::OutOfRange(format!(
            "zeta must be a nonzero field element, got {}",
            zeta.0
        )));
    }
    let q = field.q() as usize;
    if t <= 3 || t + 3 >= q || 2 * t + 1 == q || 2 * t == q + 1 {
        return Err(Error::OutOfRange(format!(
            "t = {t} must satisfy 3 < t < q - 3 and t != (q -+ 1)/2 (q = {q})"
        )));
    }
    let out = build(field, t, zeta)?;
    verified(field, out, Domain::Field, "power-sums", |p| {
        p.t == t && p.e1.is_zero() && p.psum2 == zeta
    })
}

/// As [`witness_power_sums`] under `p | t`, which already rules out the two
/// middle sizes.
pub fn witness_power_sums_divisible(field: &Field, t: usize, zeta: Elem) -> Result<Vec<Elem>> {
    if field.p() != 2 && !t.is_multiple_of(field.p() as usize) {
        return Err(Error::OutOfRange(format!(
            "t = {t} must be divisible by p = {}",
            field.p()
        )));
    }
    witness_power_sums(field, t, zeta)
}

fn build(field: &Field, t: usize, zeta: Elem) -> Result<Vec<Elem>> {
    let q = field.q() as usize;
    if 2 * t + 1 < q {
        if t.is_multiple_of(2) {
            return structured(field, t, zeta);
        }
        let mut out = structured(field, t - 1, zeta)?;
        out.push(Elem::ZERO);
        return Ok(out);
    }
    let rest = build(field, q - t, field.neg(zeta))?;
    Ok(field.elements().filter(|x| !rest.contains(x)).collect())
}

/// Even `t` with `2 < t < (q-1)/2`; every element is nonzero.
fn structured(field: &Field, t: usize, zeta: Elem) -> Result<Vec<Elem>> {
    let half = t / 2 - 1;
    let powers: Vec<Elem> = (0..half as u64).map(|i| field.gen_pow(i)).collect();
    let s = field.sum(powers.iter().map(|&g| field.mul(g, g)));
    let target = field.div(zeta, field.from_int(2))?;
    for alpha in field.units() {
        let a2 = field.mul(alpha, alpha);
        for y in field.units() {
            if field.add(a2, field.mul(field.mul(y, y), s)) != target {
                continue;
            }
            let ys: Vec<Elem> = powers.iter().map(|&g| field.mul(y, g)).collect();
            if ys.iter().any(|&v| v == alpha || v == field.neg(alpha)) {
                continue;
            }
            let mut out = vec![alpha, field.neg(alpha)];
            for v in ys {
                out.push(v);
                out.push(field.neg(v));
            }
            return Ok(out);
        }
    }
    Err(Error::SearchExhausted(format!(
        "no admissible (alpha, y) for t = {t}, zeta = {} in GF({q})",
        zeta.0,
        q = field.q()
    )))
}
