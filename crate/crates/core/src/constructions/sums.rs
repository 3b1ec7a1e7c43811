use super::{geometric_sum, verified, Domain};
use crate::error::{Error, Result};
use crate::field::{Elem, Field};

fn no_witness(domain: Domain, t: usize, b: Elem) -> Error {
    Error::NoWitness(format!(
        "no {t} distinct elements of the {domain} sum to {}",
        b.0
    ))
}

/// `t` distinct elements of `domain` summing to `b`.
///
/// `b != 0` scales a geometric progression; `b = 0` pairs `x` with `-x` in odd
/// characteristic and uses a collision search in characteristic two. Sizes
/// above half the domain are handled through the complement, since the whole
/// domain sums to zero.
pub fn witness_sum(field: &Field, domain: Domain, t: usize, b: Elem) -> Result<Vec<Elem>> {
    if !field.contains(b) {
        return Err(Error::FieldMismatch {
            value: b.0 as u64,
            q: field.q(),
        });
    }
    let all = domain.elements(field);
    let n = all.len();
    if t < 1 || t > n {
        return Err(Error::OutOfRange(format!("t = {t} must lie in 1..={n}")));
    }
    let raw = if t == n {
        (field.sum(all.iter().copied()) == b).then(|| all.clone())
    } else if !b.is_zero() {
        Some(scaled_progression(field, domain, t, b)?)
    } else if field.p() == 2 {
        zero_sum_char2(field, domain, t)?
    } else {
        zero_sum_odd(field, domain, t)?
    };
    let elements = raw.ok_or_else(|| no_witness(domain, t, b))?;
    verified(field, elements, domain, "sum", |p| p.t == t && p.e1 == b)
}

/// `{0} ∪ b u^-1 {1, g, ..., g^(t-2)}` over `F_q`, or `b u^-1 {1, ..., g^(t-1)}` over `F_q*`.
fn scaled_progression(field: &Field, domain: Domain, t: usize, b: Elem) -> Result<Vec<Elem>> {
    if t == 1 {
        return Ok(vec![b]);
    }
    let len = match domain {
        Domain::Field => t - 1,
        Domain::Units => t,
    };
    let u = geometric_sum(field, len);
    let scale = field.div(b, u)?;
    let mut out: Vec<Elem> = (0..len as u64)
        .map(|i| field.mul(scale, field.gen_pow(i)))
        .collect();
    if domain == Domain::Field {
        out.push(Elem::ZERO);
    }
    Ok(out)
}

/// Pairs `{x, -x}` taken in ascending order of `x`, skipping `exclude`.
fn pairs(field: &Field, count: usize, exclude: &[Elem]) -> Option<Vec<Elem>> {
    let mut out = Vec::with_capacity(2 * count);
    for x in field.units() {
        if out.len() == 2 * count {
            break;
        }
        let nx = field.neg(x);
        if x < nx && !exclude.contains(&x) && !exclude.contains(&nx) {
            out.push(x);
            out.push(nx);
        }
    }
    (out.len() == 2 * count).then_some(out)
}

fn zero_sum_odd(field: &Field, domain: Domain, t: usize) -> Result<Option<Vec<Elem>>> {
    let q = field.q() as usize;
    match domain {
        Domain::Field => {
            let mut out = pairs(field, t / 2, &[]).expect("enough pairs");
            if t % 2 == 1 {
                out.push(Elem::ZERO);
            }
            Ok(Some(out))
        }
        Domain::Units if t.is_multiple_of(2) => Ok(pairs(field, t / 2, &[])),
        Domain::Units if t == 1 || t + 2 == q => Ok(None),
        Domain::Units => {
            // three nonzero elements summing to zero, none the negative of another
            let z2 = Elem::ONE;
            let bad = [
                z2,
                field.neg(z2),
                field.scale_int(-2, z2),
                field.div(field.neg(z2), field.from_int(2))?,
            ];
            let z1 = field
                .units()
                .find(|z| !bad.contains(z))
                .ok_or_else(|| Error::SearchExhausted("no admissible z1".into()))?;
            let z3 = field.neg(field.add(z1, z2));
            let triple = [z1, z2, z3];
            let excluded: Vec<Elem> = triple.iter().flat_map(|&z| [z, field.neg(z)]).collect();
            let mut out =
                pairs(field, (t - 3) / 2, &excluded).expect("enough pairs outside the triple");
            out.extend(triple);
            Ok(Some(out))
        }
    }
}

fn zero_sum_char2(field: &Field, domain: Domain, t: usize) -> Result<Option<Vec<Elem>>> {
    let q = field.q() as usize;
    let n = match domain {
        Domain::Field => q,
        Domain::Units => q - 1,
    };
    if t == 1 {
        return Ok((domain == Domain::Field).then(|| vec![Elem::ZERO]));
    }
    if t == 2 || t + 2 == n || (domain == Domain::Units && t + 1 == n) {
        return Ok(None);
    }
    if 2 * t > q {
        let rest = zero_sum_char2(field, domain, n - t)?;
        return Ok(rest.map(|rest| {
            domain
                .elements(field)
                .into_iter()
                .filter(|x| !rest.contains(x))
                .collect()
        }));
    }
    // {g, ..., g^(t-2)} plus a pair x, y outside it with s + x = y
    let base: Vec<Elem> = (1..=(t - 2) as u64).map(|i| field.gen_pow(i)).collect();
    let s = field.sum(base.iter().copied());
    let outside = |x: &Elem| !x.is_zero() && !base.contains(x);
    let x = field
        .units()
        .filter(outside)
        .find(|&x| {
            let y = field.add(s, x);
            y != x && outside(&y)
        })
        .ok_or_else(|| Error::SearchExhausted(format!("no collision pair for t = {t}")))?;
    let mut out = base;
    out.push(x);
    out.push(field.add(s, x));
    Ok(Some(out))
}
