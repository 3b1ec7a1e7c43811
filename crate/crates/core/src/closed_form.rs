//! Closed-form error distances for words of degree `k + 1` (standard and
//! primitive codes) and `k + 2` (standard codes).
//!
//! Every verdict names the clause that produced it. Parameter cells that no
//! clause covers come back as [`Verdict::Unknown`] labelled `uncovered`.

use std::fmt;

use crate::code::CodeKind;
use crate::engine::{DistanceResult, Method, Verdict};
use crate::error::{Error, Result};
use crate::field::{Elem, Field};

/// Which rule of the case analysis settled a verdict.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Clause {
    /// `deg u < k`.
    Codeword,
    /// `deg u = k`: every such word is a deep hole.
    DegreeK,
    /// Only `n - deg u <= d <= n - k` is known.
    DegreeBounds,

    StdK1PairCancel,
    StdK1ComplementPair,
    StdK1Generic,

    PrimK1PairCancel,
    PrimK1ComplementPair,
    PrimK1AllButOne,
    PrimK1Generic,

    StdK2FullSquare,
    StdK2FullNonSquare,

    /// p = 2, `k + 1 = 2 mod 4`, `b^2 != c`.
    Char2HalfOddNonSquare,
    /// p = 2, `k + 1 = 2 mod 4`, `b^2 = c`, `k + 2 > q/2`.
    Char2HalfOddSquareLarge,
    /// p = 2, `4 | k + 1`, `c != 0`.
    Char2QuarterNonzeroC,
    /// p = 2, `4 | k + 1`, `c = 0`, `k + 2 < q/2`.
    Char2QuarterZeroCSmall,
    /// p = 2, `4 | k + 1`, `c = 0`, `k + 2 >= q/2`: bound only.
    Char2QuarterZeroCLarge,
    /// p = 2, `4 | k`: bound only.
    Char2KQuarter,
    /// p = 2, `k = 2 mod 4`, `b != 0`: bound only.
    Char2KHalfNonzeroB,
    /// p = 2, `k = 2 mod 4`, `c != 0`: bound only.
    Char2KHalfNonzeroC,
    /// p = 2, `k = 2 mod 4`, `b = c = 0`, `k + 1 > q/2`: bound only.
    Char2KHalfZeroLarge,

    /// p odd, `p` does not divide `k + 2`: bound only.
    OddCoprime,
    /// p odd, `p | k + 2`, `b = c = 0`, `k + 2 > q/2 + 1`: bound only.
    OddDivZeroLarge,
    /// p odd, `p | k + 2`, `b != 0`.
    OddDivNonzeroB,
    /// p = 3, `k + 2 = 3`, `b = 0`, `-c` a non-square.
    OddDivTernaryDeepHole,
    /// p = 3, `k + 2 = q - 3`, `b = 0`, `-c` a non-square.
    OddDivTernaryComplement,
    /// p odd, `p | k + 2`, `b = 0`, `c != 0`, remaining cases.
    OddDivNonzeroC,

    Uncovered,
}

impl Clause {
    pub fn label(self) -> &'static str {
        use Clause::*;
        match self {
            Codeword => "deg<k: codeword",
            DegreeK => "deg=k: deep hole",
            DegreeBounds => "n-deg(u) <= d <= n-k",
            StdK1PairCancel => "k+1/standard: b=0, p=2, k=1",
            StdK1ComplementPair => "k+1/standard: b=0, p=2, k=q-3",
            StdK1Generic => "k+1/standard: otherwise",
            PrimK1PairCancel => "k+1/primitive: b=0, p=2, k=1",
            PrimK1ComplementPair => "k+1/primitive: b=0, p=2, k=q-4",
            PrimK1AllButOne => "k+1/primitive: b=0, k=q-3",
            PrimK1Generic => "k+1/primitive: otherwise",
            StdK2FullSquare => "k+2/standard, k+2=q-1: b^2=c",
            StdK2FullNonSquare => "k+2/standard, k+2=q-1: b^2!=c",
            Char2HalfOddNonSquare => "k+2/standard, p=2: 2|k+1, 4∤k+1, b^2!=c",
            Char2HalfOddSquareLarge => "k+2/standard, p=2: 2|k+1, 4∤k+1, b^2=c, k+2>q/2",
            Char2QuarterNonzeroC => "k+2/standard, p=2: 4|k+1, c!=0",
            Char2QuarterZeroCSmall => "k+2/standard, p=2: 4|k+1, c=0, k+2<q/2",
            Char2QuarterZeroCLarge => "k+2/standard, p=2: 4|k+1, c=0, k+2>=q/2 (bound)",
            Char2KQuarter => "k+2/standard, p=2: 4|k (bound)",
            Char2KHalfNonzeroB => "k+2/standard, p=2: 2|k, 4∤k, b!=0 (bound)",
            Char2KHalfNonzeroC => "k+2/standard, p=2: 2|k, 4∤k, c!=0 (bound)",
            Char2KHalfZeroLarge => "k+2/standard, p=2: 2|k, 4∤k, b=c=0, k+1>q/2 (bound)",
            OddCoprime => "k+2/standard, p odd: p∤k+2 (bound)",
            OddDivZeroLarge => "k+2/standard, p odd: p|k+2, b=c=0, k+2>q/2+1 (bound)",
            OddDivNonzeroB => "k+2/standard, p odd: p|k+2, b!=0",
            OddDivTernaryDeepHole => "k+2/standard, p=3: k+2=3, b=0, -c non-square",
            OddDivTernaryComplement => "k+2/standard, p=3: k+2=q-3, b=0, -c non-square",
            OddDivNonzeroC => "k+2/standard, p odd: p|k+2, b=0, c!=0",
            Uncovered => "uncovered",
        }
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Parameters of one closed-form query. `c` is absent for degree `k + 1`.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct ClosedFormCase {
    pub kind: CodeKind,
    pub q: u32,
    pub p: u32,
    pub k: usize,
    pub b: Elem,
    pub c: Option<Elem>,
    /// `(k + 1) mod p`
    pub r: u32,
    /// `(q - k - 1) mod p`
    pub s: u32,
}

impl ClosedFormCase {
    pub fn new(
        field: &Field,
        kind: CodeKind,
        k: usize,
        b: Elem,
        c: Option<Elem>,
    ) -> ClosedFormCase {
        let (q, p) = (field.q(), field.p());
        ClosedFormCase {
            kind,
            q,
            p,
            k,
            b,
            c,
            r: ((k as u64 + 1) % p as u64) as u32,
            s: ((q as u64).wrapping_sub(k as u64 + 1) % p as u64) as u32,
        }
    }
}

fn verdict(v: Verdict, clause: Clause) -> Result<DistanceResult> {
    Ok(DistanceResult::new(v, Method::ClosedForm).with_clause(clause))
}

/// Looks up the closed-form distance for `case`.
pub fn closed_form_distance(field: &Field, case: &ClosedFormCase) -> Result<DistanceResult> {
    if case.q != field.q() || case.p != field.p() {
        return Err(Error::FieldMismatch {
            value: case.q as u64,
            q: field.q(),
        });
    }
    match (case.kind, case.c) {
        (CodeKind::Standard, None) => standard_k1(field, case),
        (CodeKind::Primitive, None) => primitive_k1(field, case),
        (CodeKind::Standard, Some(c)) => standard_k2(field, case, c),
        (kind, c) => Err(Error::OutOfClosedFormRange(format!(
            "{kind} code with degree k+{}",
            if c.is_some() { 2 } else { 1 }
        ))),
    }
}

fn standard_k1(field: &Field, case: &ClosedFormCase) -> Result<DistanceResult> {
    let (q, k) = (case.q as usize, case.k);
    if k < 1 || k + 2 > q {
        return Err(Error::OutOfClosedFormRange(format!(
            "standard degree k+1 needs 1 <= k <= q-2, got k={k}, q={q}"
        )));
    }
    let zero_b_char2 = case.b.is_zero() && field.p() == 2;
    if zero_b_char2 && k == 1 {
        verdict(Verdict::Exact(q - k), Clause::StdK1PairCancel)
    } else if zero_b_char2 && k + 3 == q {
        verdict(Verdict::Exact(q - k), Clause::StdK1ComplementPair)
    } else {
        verdict(Verdict::Exact(q - k - 1), Clause::StdK1Generic)
    }
}

fn primitive_k1(field: &Field, case: &ClosedFormCase) -> Result<DistanceResult> {
    let (q, k) = (case.q as usize, case.k);
    if q <= 5 || k < 1 || k + 3 > q {
        return Err(Error::OutOfClosedFormRange(format!(
            "primitive degree k+1 needs q > 5 and 1 <= k <= q-3, got k={k}, q={q}"
        )));
    }
    let zero_b = case.b.is_zero();
    let char2 = field.p() == 2;
    if zero_b && char2 && k == 1 {
        verdict(Verdict::Exact(q - k - 1), Clause::PrimK1PairCancel)
    } else if zero_b && char2 && k + 4 == q {
        verdict(Verdict::Exact(q - k - 1), Clause::PrimK1ComplementPair)
    } else if zero_b && k + 3 == q {
        verdict(Verdict::Exact(q - k - 1), Clause::PrimK1AllButOne)
    } else {
        verdict(Verdict::Exact(q - k - 2), Clause::PrimK1Generic)
    }
}

fn standard_k2(field: &Field, case: &ClosedFormCase, c: Elem) -> Result<DistanceResult> {
    let (q, k, b) = (case.q as usize, case.k, case.b);
    if k < 1 || k + 3 > q {
        return Err(Error::OutOfClosedFormRange(format!(
            "standard degree k+2 needs 1 <= k <= q-3, got k={k}, q={q}"
        )));
    }
    let square_b = field.mul(b, b);
    let exact_small = Verdict::Exact(q - k - 2);
    let bound = Verdict::UpperBound(q - k - 1);

    if k + 3 == q {
        return if square_b == c {
            verdict(exact_small, Clause::StdK2FullSquare)
        } else {
            verdict(Verdict::Exact(q - k - 1), Clause::StdK2FullNonSquare)
        };
    }

    // twice a comparison against q/2 keeps everything in integers
    let (t, two_k2, two_k1) = (q, 2 * (k + 2), 2 * (k + 1));
    if field.p() == 2 {
        let k1 = k + 1;
        if k1 % 4 == 2 {
            if square_b != c {
                verdict(exact_small, Clause::Char2HalfOddNonSquare)
            } else if two_k2 > t {
                verdict(exact_small, Clause::Char2HalfOddSquareLarge)
            } else {
                verdict(Verdict::Unknown, Clause::Uncovered)
            }
        } else if k1 % 4 == 0 {
            if !c.is_zero() {
                verdict(exact_small, Clause::Char2QuarterNonzeroC)
            } else if two_k2 < t {
                verdict(exact_small, Clause::Char2QuarterZeroCSmall)
            } else {
                verdict(bound, Clause::Char2QuarterZeroCLarge)
            }
        } else if k % 4 == 0 {
            verdict(bound, Clause::Char2KQuarter)
        } else if !b.is_zero() {
            verdict(bound, Clause::Char2KHalfNonzeroB)
        } else if !c.is_zero() {
            verdict(bound, Clause::Char2KHalfNonzeroC)
        } else if two_k1 > t {
            verdict(bound, Clause::Char2KHalfZeroLarge)
        } else {
            verdict(Verdict::Unknown, Clause::Uncovered)
        }
    } else {
        let p = field.p() as usize;
        if (k + 2) % p != 0 {
            return verdict(bound, Clause::OddCoprime);
        }
        if !b.is_zero() {
            return verdict(exact_small, Clause::OddDivNonzeroB);
        }
        if !c.is_zero() {
            let neg_c_square = field.quadratic_character(field.neg(c))? == 1;
            return if p == 3 && k + 2 == 3 && !neg_c_square {
                verdict(Verdict::Exact(q - k), Clause::OddDivTernaryDeepHole)
            } else if p == 3 && k + 5 == q && !neg_c_square {
                verdict(Verdict::Exact(q - k - 1), Clause::OddDivTernaryComplement)
            } else {
                verdict(exact_small, Clause::OddDivNonzeroC)
            };
        }
        if two_k2 > t + 2 {
            verdict(bound, Clause::OddDivZeroLarge)
        } else {
            verdict(Verdict::Unknown, Clause::Uncovered)
        }
    }
}
