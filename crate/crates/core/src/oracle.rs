//! Exhaustive error-distance oracle.
//!
//! Any codeword agreeing with `u` on at least `k` positions is the interpolant
//! of `u` on `k` of them, and some codeword always agrees on `k` positions, so
//! `d(u, C) = n - max_S agreement(interp(u|S), u)` over all `k`-subsets `S`.

use crate::code::{ReceivedWord, RsCode};
use crate::engine::{DistanceResult, Method, Verdict};
use crate::error::{Error, Result};
use crate::field::Elem;
use crate::par::{map_collect, Parallelism};
use crate::poly::Poly;

pub const DEFAULT_ORACLE_CAP: u64 = 10_000_000;
pub const ORACLE_CAP_ENV: &str = "RSDH_ORACLE_CAP";

/// The subset-count cap, honoring `RSDH_ORACLE_CAP` when it parses.
pub fn oracle_cap_from_env() -> u64 {
    std::env::var(ORACLE_CAP_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_ORACLE_CAP)
}

/// `C(n, k)`, saturating at `u64::MAX`.
pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

struct Best {
    agreement: usize,
    subset: Vec<usize>,
}

fn search_from(code: &RsCode, u: &ReceivedWord, first: usize) -> Best {
    let field = code.field();
    let (n, k) = (code.n(), code.k());
    let d = code.eval_set();
    let vals = u.values();
    let mut best = Best {
        agreement: 0,
        subset: Vec::new(),
    };
    let mut idx: Vec<usize> = (first..first + k).collect();
    let mut points = Vec::with_capacity(k);
    loop {
        points.clear();
        points.extend(idx.iter().map(|&i| (d[i], vals[i])));
        let f = Poly::interpolate(field, &points).expect("evaluation set has distinct nodes");
        let agreement = d
            .iter()
            .zip(vals)
            .filter(|&(&x, &y)| f.eval(field, x) == y)
            .count();
        if agreement > best.agreement {
            best = Best {
                agreement,
                subset: idx.clone(),
            };
            if agreement == n {
                return best;
            }
        }
        // next combination with idx[0] pinned to `first`
        let mut i = k;
        loop {
            if i == 1 {
                return best;
            }
            i -= 1;
            if idx[i] < n - k + i {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Exact distance by maximum agreement over all `k`-subsets of positions.
/// The nearest codeword's message polynomial is returned alongside.
pub fn max_agreement_oracle(
    code: &RsCode,
    u: &ReceivedWord,
    cap: u64,
    mode: Parallelism,
) -> Result<DistanceResult> {
    if u.len() != code.n() {
        return Err(Error::LengthMismatch {
            expected: code.n(),
            got: u.len(),
        });
    }
    if code.is_codeword(u) {
        return Ok(DistanceResult::new(Verdict::Exact(0), Method::Oracle)
            .with_nearest(u.interpolant().clone()));
    }
    let (n, k) = (code.n(), code.k());
    let count = binomial(n, k);
    if count > cap {
        return Err(Error::TooLarge(format!(
            "C({n},{k}) = {count} exceeds oracle cap {cap}"
        )));
    }
    let firsts: Vec<usize> = (0..=n - k).collect();
    let results = map_collect(&firsts, mode, |&first| search_from(code, u, first));
    let best = results
        .into_iter()
        .fold(None::<Best>, |acc, b| match acc {
            Some(a) if a.agreement >= b.agreement => Some(a),
            _ => Some(b),
        })
        .expect("at least one subset");
    let field = code.field();
    let points: Vec<(Elem, Elem)> = best
        .subset
        .iter()
        .map(|&i| (code.eval_set()[i], u.values()[i]))
        .collect();
    let nearest = Poly::interpolate(field, &points)?;
    Ok(
        DistanceResult::new(Verdict::Exact(n - best.agreement), Method::Oracle)
            .with_nearest(nearest),
    )
}
