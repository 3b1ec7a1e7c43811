use super::{verified, Domain};
use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::poly::SymmetricProfile;

/// Parameters of the target set `A = {(alpha^2 - b^2 r^2)/mu + 2 c r1 : alpha in F_q}`.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct DiscriminantParams {
    pub r: Elem,
    pub r1: Elem,
    pub mu: Elem,
    pub b: Elem,
    pub c: Elem,
}

impl DiscriminantParams {
    /// `v` lies in `A` iff `(v - 2 c r1) mu + b^2 r^2` is a square.
    pub fn in_target(&self, field: &Field, v: Elem) -> bool {
        let shifted = field.sub(v, field.scale_int(2, field.mul(self.c, self.r1)));
        let br = field.mul(self.b, self.r);
        field.is_square(field.add(field.mul(shifted, self.mu), field.mul(br, br)))
    }

    /// `m^2 - r n` for `m = sum y`, `n = sum y^2`.
    pub fn discriminant(&self, field: &Field, values: &[Elem]) -> Elem {
        let p = SymmetricProfile::of(field, values);
        field.sub(field.mul(p.e1, p.e1), field.mul(self.r, p.psum2))
    }
}

/// `t` distinct nonzero elements with `m^2 - r n` in `A`, `p` odd, `t` even,
/// `2 < t < (q+1)/2`.
///
/// Scans `{±y g, ..., ±y g^(t/2)}` over `y`, then
/// `{±alpha, ±z g, ..., ±z g^((t-2)/2)}` over `(alpha, z)`, both ascending.
/// The two families' values plus `A` exceed `q` in number, so some member
/// lands in `A`; [`Error::SearchExhausted`] would contradict that.
pub fn witness_discriminant(
    field: &Field,
    params: &DiscriminantParams,
    t: usize,
) -> Result<Vec<Elem>> {
    if field.p() == 2 {
        return Err(Error::OutOfRange(
            "discriminant witnesses need odd characteristic".into(),
        ));
    }
    if params.r.is_zero() || params.r1.is_zero() || params.mu.is_zero() {
        return Err(Error::OutOfRange("r, r1 and mu must be nonzero".into()));
    }
    let q = field.q() as usize;
    if t % 2 == 1 || t <= 2 || 2 * t > q {
        return Err(Error::OutOfRange(format!(
            "t = {t} must be even with 2 < t < (q+1)/2 (q = {q})"
        )));
    }
    let out = search(field, params, t)?;
    verified(field, out, Domain::Units, "discriminant", |p| {
        p.t == t
            && params.in_target(
                field,
                field.sub(field.mul(p.e1, p.e1), field.mul(params.r, p.psum2)),
            )
    })
}

fn signed(field: &Field, base: &[Elem]) -> Vec<Elem> {
    base.iter().flat_map(|&v| [v, field.neg(v)]).collect()
}

fn distinct(values: &[Elem]) -> bool {
    let mut v = values.to_vec();
    v.sort_unstable();
    v.windows(2).all(|w| w[0] != w[1])
}

fn search(field: &Field, params: &DiscriminantParams, t: usize) -> Result<Vec<Elem>> {
    let half = t / 2;
    let gp: Vec<Elem> = (1..=half as u64).map(|i| field.gen_pow(i)).collect();
    for y in field.units() {
        let cand = signed(
            field,
            &gp.iter().map(|&g| field.mul(y, g)).collect::<Vec<_>>(),
        );
        if distinct(&cand) && params.in_target(field, params.discriminant(field, &cand)) {
            return Ok(cand);
        }
    }
    for alpha in field.units() {
        for z in field.units() {
            let mut base = vec![alpha];
            base.extend(gp[..half - 1].iter().map(|&g| field.mul(z, g)));
            let cand = signed(field, &base);
            if distinct(&cand) && params.in_target(field, params.discriminant(field, &cand)) {
                return Ok(cand);
            }
        }
    }
    Err(Error::SearchExhausted(format!(
        "no witness of size {t} in GF({})",
        field.q()
    )))
}
