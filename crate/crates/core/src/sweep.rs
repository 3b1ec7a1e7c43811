//! Parameter sweeps comparing closed-form verdicts, subset tables and the
//! exhaustive oracle, one row per word.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::code::{CodeKind, ReceivedWord, RsCode};
use crate::engine::{DistanceEngine, Verdict};
use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::oracle::binomial;
use crate::par::{map_collect, Parallelism};
use crate::poly::Poly;

/// Which received words a sweep visits for each code.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Family {
    /// `x^(k+1) - b x^k` for every `b`.
    DegreeK1,
    /// `x^(k+2) - b x^(k+1) + c x^k` for every `(b, c)`.
    DegreeK2,
    /// `a x^(q-2) + v(x)` for every `a != 0` and `samples` random `v` of
    /// degree below `k`; each such word is expected to be a deep hole.
    InverseMonomial { samples: usize },
}

/// Which values of `k` to visit.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum KSelect {
    /// Every `k` the family admits.
    All,
    /// `lo..=hi`, clipped to what the family admits.
    Range(usize, usize),
    /// The single value `q - offset`.
    QMinus(usize),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct Methods {
    pub closed_form: bool,
    pub subset_dp: bool,
    pub oracle: bool,
}

impl Default for Methods {
    fn default() -> Self {
        Methods {
            closed_form: true,
            subset_dp: true,
            oracle: true,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SweepConfig {
    pub fields: Vec<Arc<Field>>,
    pub kinds: Vec<CodeKind>,
    pub k: KSelect,
    pub family: Family,
    pub methods: Methods,
    pub oracle_cap: u64,
    pub parallelism: Parallelism,
    pub seed: u64,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RowStatus {
    /// Every available value is consistent.
    Agree,
    /// Two methods contradict each other.
    Disagree,
    /// The closed form has no verdict; the computed truth is recorded.
    Unknown,
    /// No exact method ran, so nothing could be checked.
    Unverified,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepRow {
    pub q: u32,
    pub kind: CodeKind,
    pub n: usize,
    pub k: usize,
    pub degree: Option<usize>,
    pub b: Option<u32>,
    pub c: Option<u32>,
    pub a: Option<u32>,
    pub sample: Option<usize>,
    pub closed_form: Option<&'static str>,
    pub closed_d: Option<usize>,
    pub case: Option<&'static str>,
    pub subset_dp: Option<usize>,
    pub oracle: Option<usize>,
    pub oracle_capped: bool,
    pub expected: Option<usize>,
    pub status: RowStatus,
}

impl SweepRow {
    pub fn truth(&self) -> Option<usize> {
        self.oracle.or(self.subset_dp)
    }

    pub fn closed_verdict(&self) -> Option<Verdict> {
        match (self.closed_form?, self.closed_d) {
            ("exact", Some(d)) => Some(Verdict::Exact(d)),
            ("upper_bound", Some(d)) => Some(Verdict::UpperBound(d)),
            _ => Some(Verdict::Unknown),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SweepSummary {
    pub rows: usize,
    pub agree: usize,
    pub disagree: usize,
    pub unknown: usize,
    pub unverified: usize,
    pub oracle_capped: usize,
    pub case_hits: BTreeMap<&'static str, usize>,
}

impl SweepSummary {
    pub fn of(rows: &[SweepRow]) -> SweepSummary {
        let mut s = SweepSummary {
            rows: rows.len(),
            ..Default::default()
        };
        for r in rows {
            match r.status {
                RowStatus::Agree => s.agree += 1,
                RowStatus::Disagree => s.disagree += 1,
                RowStatus::Unknown => s.unknown += 1,
                RowStatus::Unverified => s.unverified += 1,
            }
            s.oracle_capped += r.oracle_capped as usize;
            if let Some(case) = r.case {
                *s.case_hits.entry(case).or_default() += 1;
            }
        }
        s
    }
}

#[derive(Clone, Debug)]
struct Cell {
    group: usize,
    b: Option<Elem>,
    c: Option<Elem>,
    a: Option<Elem>,
    sample: Option<usize>,
}

fn k_bounds(family: Family, q: usize, n: usize) -> (usize, usize) {
    match family {
        Family::DegreeK1 => (1, n.saturating_sub(2)),
        Family::DegreeK2 => (1, n.saturating_sub(3)),
        Family::InverseMonomial { .. } => (2, q.saturating_sub(2).min(n.saturating_sub(1))),
    }
}

fn k_values(select: KSelect, family: Family, q: usize, n: usize) -> Vec<usize> {
    let (lo, hi) = k_bounds(family, q, n);
    let (a, b) = match select {
        KSelect::All => (lo, hi),
        KSelect::Range(a, b) => (a.max(lo), b.min(hi)),
        KSelect::QMinus(off) => match q.checked_sub(off) {
            Some(k) => (k.max(lo), k.min(hi)),
            None => (1, 0),
        },
    };
    (a..=b).collect()
}

/// Runs the sweep; rows come back in a fixed order whatever the parallelism.
pub fn run_sweep(config: &SweepConfig) -> Result<Vec<SweepRow>> {
    let mut engines = Vec::new();
    let mut cells = Vec::new();
    for field in &config.fields {
        let q = field.q() as usize;
        for &kind in &config.kinds {
            if kind == CodeKind::Generalized {
                return Err(Error::InvalidCode(
                    "sweeps cover standard and primitive codes only".into(),
                ));
            }
            if kind == CodeKind::Primitive && q == 2 {
                continue;
            }
            let n = if kind == CodeKind::Standard { q } else { q - 1 };
            for k in k_values(config.k, config.family, q, n) {
                let code = RsCode::with_kind(field.clone(), kind, k)?;
                let group = engines.len();
                engines.push(
                    DistanceEngine::new(code)
                        .with_oracle_cap(config.oracle_cap)
                        .with_parallelism(Parallelism::Sequential),
                );
                let blank = Cell {
                    group,
                    b: None,
                    c: None,
                    a: None,
                    sample: None,
                };
                match config.family {
                    Family::DegreeK1 => cells.extend(field.elements().map(|b| Cell {
                        b: Some(b),
                        ..blank.clone()
                    })),
                    Family::DegreeK2 => {
                        for b in field.elements() {
                            cells.extend(field.elements().map(|c| Cell {
                                b: Some(b),
                                c: Some(c),
                                ..blank.clone()
                            }))
                        }
                    }
                    Family::InverseMonomial { samples } => {
                        for a in field.units() {
                            cells.extend((0..samples).map(|s| Cell {
                                a: Some(a),
                                sample: Some(s),
                                ..blank.clone()
                            }))
                        }
                    }
                }
            }
        }
    }
    let results = map_collect(&cells, config.parallelism, |cell| {
        evaluate(&engines[cell.group], cell, config)
    });
    results.into_iter().collect()
}

/// Cell-specific seed, so a row does not depend on which other rows run.
fn cell_seed(seed: u64, q: u32, k: usize, a: Elem, sample: usize) -> u64 {
    let mut h = seed ^ 0x9e37_79b9_7f4a_7c15;
    for v in [q as u64, k as u64, a.0 as u64, sample as u64] {
        h = (h ^ v).wrapping_mul(0x0100_0000_01b3).rotate_left(17);
    }
    h
}

fn build_word(engine: &DistanceEngine, cell: &Cell, seed: u64) -> Result<ReceivedWord> {
    let code = engine.code();
    let field = code.field();
    let k = code.k();
    let poly = if let Some(a) = cell.a {
        let mut rng =
            ChaCha8Rng::seed_from_u64(cell_seed(seed, field.q(), k, a, cell.sample.unwrap_or(0)));
        let q = field.q() as usize;
        let mut coeffs: Vec<Elem> = (0..k).map(|_| Elem(rng.gen_range(0..field.q()))).collect();
        coeffs.resize(q - 1, Elem::ZERO);
        coeffs[q - 2] = field.add(coeffs[q - 2], a);
        Poly::from_coeffs(coeffs)
    } else {
        let b = cell.b.unwrap_or(Elem::ZERO);
        let excess = if cell.c.is_some() { 2 } else { 1 };
        let deg = k + excess;
        let mut coeffs = vec![Elem::ZERO; deg + 1];
        coeffs[deg] = Elem::ONE;
        coeffs[deg - 1] = field.neg(b);
        if let Some(c) = cell.c {
            coeffs[deg - 2] = c;
        }
        Poly::from_coeffs(coeffs)
    };
    code.word_from_poly(&poly)
}

fn evaluate(engine: &DistanceEngine, cell: &Cell, config: &SweepConfig) -> Result<SweepRow> {
    let code = engine.code();
    let (n, k) = (code.n(), code.k());
    let u = build_word(engine, cell, config.seed)?;

    let closed = if config.methods.closed_form {
        match engine.closed_form(&u) {
            Ok(r) => Some(r),
            Err(Error::OutOfClosedFormRange(_)) => None,
            Err(e) => return Err(e),
        }
    } else {
        None
    };
    let subset_dp = if config.methods.subset_dp {
        match engine.subset_distance(&u) {
            Ok(r) => r.verdict.exact(),
            Err(Error::DegreeOutOfRange { .. }) | Err(Error::TooLarge(_)) => None,
            Err(e) => return Err(e),
        }
    } else {
        None
    };
    let oracle_capped = config.methods.oracle && binomial(n, k) > config.oracle_cap;
    let oracle = if config.methods.oracle && !oracle_capped {
        engine.oracle(&u)?.verdict.exact()
    } else {
        None
    };
    let expected = (cell.a.is_some() && code.kind() == CodeKind::Primitive).then(|| n - k);

    let mut row = SweepRow {
        q: code.field().q(),
        kind: code.kind(),
        n,
        k,
        degree: u.degree(),
        b: cell.b.map(|e| e.0),
        c: cell.c.map(|e| e.0),
        a: cell.a.map(|e| e.0),
        sample: cell.sample,
        closed_form: closed.as_ref().map(|r| r.verdict.tag()),
        closed_d: closed.as_ref().and_then(|r| r.verdict.value()),
        case: closed.as_ref().and_then(|r| r.clause).map(|c| c.label()),
        subset_dp,
        oracle,
        oracle_capped,
        expected,
        status: RowStatus::Agree,
    };
    row.status = classify(&row);
    Ok(row)
}

fn classify(row: &SweepRow) -> RowStatus {
    let Some(truth) = row.truth() else {
        return RowStatus::Unverified;
    };
    let closed = row.closed_verdict();
    let clash = matches!((row.subset_dp, row.oracle), (Some(a), Some(b)) if a != b)
        || closed.is_some_and(|v| !v.admits(truth))
        || row.expected.is_some_and(|e| e != truth);
    if clash {
        RowStatus::Disagree
    } else if closed == Some(Verdict::Unknown) {
        RowStatus::Unknown
    } else {
        RowStatus::Agree
    }
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map_or_else(|| "-".to_string(), |v| v.to_string())
}

pub const TSV_HEADER: &str =
    "q\tkind\tn\tk\tdegree\tb\tc\ta\tsample\tclosed_form\tclosed_d\tcase\tsubset_dp\toracle\texpected\tstatus";

/// Tab-separated rows with a header line.
pub fn to_tsv(rows: &[SweepRow]) -> String {
    let mut out = String::from(TSV_HEADER);
    out.push('\n');
    for r in rows {
        let oracle = if r.oracle_capped {
            "capped".to_string()
        } else {
            opt(r.oracle)
        };
        let status = serde_json::to_value(r.status).expect("status serializes");
        let _ = writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
            r.q,
            r.kind,
            r.n,
            r.k,
            opt(r.degree),
            opt(r.b),
            opt(r.c),
            opt(r.a),
            opt(r.sample),
            r.closed_form.unwrap_or("-"),
            opt(r.closed_d),
            r.case.unwrap_or("-"),
            opt(r.subset_dp),
            oracle,
            opt(r.expected),
            status.as_str().unwrap_or("-"),
        );
    }
    out
}

/// `{"summary": ..., "rows": [...]}`.
pub fn to_json(rows: &[SweepRow]) -> String {
    let doc = serde_json::json!({
        "summary": SweepSummary::of(rows),
        "rows": rows,
    });
    serde_json::to_string_pretty(&doc).expect("rows serialize")
}
