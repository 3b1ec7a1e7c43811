//! Error distance of received words of degree `k`, `k+1` and `k+2`.
//!
//! A word `u` of degree `k + r` is at distance `n - k - r` exactly when its
//! monic interpolant agrees, above degree `k - 1`, with `(x - x_1)...(x - x_{k+r})`
//! for distinct `x_i` in `D`; it is within `n - k - i` when a `(k+i)`-subset
//! times some monic `g(x)` of degree `r - i` matches instead. Only the top
//! coefficients of `u` matter, so everything reduces to subset queries on
//! `(size, e1, e2)`.

use std::sync::OnceLock;

use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::closed_form::{closed_form_distance, Clause, ClosedFormCase};
use crate::code::{CodeKind, ReceivedWord, RsCode};
use crate::error::{Error, Result};
use crate::field::Elem;
use crate::oracle::{max_agreement_oracle, oracle_cap_from_env};
use crate::par::Parallelism;
use crate::poly::Poly;
use crate::subset::SubsetTable;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Exact(usize),
    UpperBound(usize),
    Unknown,
}

impl Verdict {
    pub fn exact(self) -> Option<usize> {
        match self {
            Verdict::Exact(d) => Some(d),
            _ => None,
        }
    }

    /// Whether a true distance `d` is compatible with this verdict.
    pub fn admits(self, d: usize) -> bool {
        match self {
            Verdict::Exact(e) => e == d,
            Verdict::UpperBound(b) => d <= b,
            Verdict::Unknown => true,
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            Verdict::Exact(_) => "exact",
            Verdict::UpperBound(_) => "upper_bound",
            Verdict::Unknown => "unknown",
        }
    }

    pub fn value(self) -> Option<usize> {
        match self {
            Verdict::Exact(d) | Verdict::UpperBound(d) => Some(d),
            Verdict::Unknown => None,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    Oracle,
    SubsetDp,
    ClosedForm,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Oracle => "oracle",
            Method::SubsetDp => "subset_dp",
            Method::ClosedForm => "closed_form",
        }
    }
}

/// Certificate for a distance value: the roots `x_i` taken from `D`, and for
/// bounds of the form `n - k - r + 1` the extra root `a` with quotient `x - a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub elements: Vec<Elem>,
    pub extra_root: Option<Elem>,
    pub quotient: Option<Poly>,
}

impl Witness {
    pub fn roots(elements: Vec<Elem>) -> Witness {
        Witness {
            elements,
            extra_root: None,
            quotient: None,
        }
    }

    pub fn with_extra_root(field: &crate::field::Field, elements: Vec<Elem>, a: Elem) -> Witness {
        Witness {
            elements,
            extra_root: Some(a),
            quotient: Some(Poly::from_roots(field, &[a])),
        }
    }

    /// Elements distinct and in `D`, and the expanded product matches the
    /// monic interpolant of `u` in every degree `>= k`.
    pub fn verify(&self, code: &RsCode, u: &ReceivedWord) -> bool {
        let field = code.field();
        let mut sorted = self.elements.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != self.elements.len()
            || !self.elements.iter().all(|x| code.eval_set().contains(x))
        {
            return false;
        }
        let mut product = Poly::from_roots(field, &self.elements);
        if let Some(g) = &self.quotient {
            if !g.is_monic() {
                return false;
            }
            product = product.mul(field, g);
        }
        let target = u.interpolant().to_monic(field);
        if product.degree() != target.degree() {
            return false;
        }
        let top = target.degree().unwrap_or(0);
        (code.k()..=top).all(|i| product.coeff(i) == target.coeff(i))
    }
}

/// A distance verdict with its certificate and provenance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceResult {
    pub verdict: Verdict,
    pub method: Method,
    pub clause: Option<Clause>,
    pub witness: Option<Witness>,
    /// Message polynomial of a nearest codeword, when the method produces one.
    pub nearest_codeword: Option<Poly>,
}

impl DistanceResult {
    pub fn new(verdict: Verdict, method: Method) -> DistanceResult {
        DistanceResult {
            verdict,
            method,
            clause: None,
            witness: None,
            nearest_codeword: None,
        }
    }

    pub fn with_clause(mut self, clause: Clause) -> Self {
        self.clause = Some(clause);
        self
    }

    pub fn with_witness(mut self, witness: Witness) -> Self {
        self.witness = Some(witness);
        self
    }

    pub fn with_nearest(mut self, nearest: Poly) -> Self {
        self.nearest_codeword = Some(nearest);
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("result serializes")
    }
}

#[derive(Serialize)]
struct WitnessJson {
    elements: Vec<u32>,
    extra_root: Option<u32>,
}

impl Serialize for DistanceResult {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("DistanceResult", 5)?;
        st.serialize_field("verdict", self.verdict.tag())?;
        st.serialize_field("d", &self.verdict.value())?;
        st.serialize_field("method", self.method.as_str())?;
        st.serialize_field("case", &self.clause.map(|c| c.label()))?;
        let witness = self.witness.as_ref().map(|w| WitnessJson {
            elements: w.elements.iter().map(|e| e.0).collect(),
            extra_root: w.extra_root.map(|a| a.0),
        });
        st.serialize_field("witness", &witness)?;
        st.end()
    }
}

/// Top coefficients of a word of degree `k + 1` or `k + 2`, monic-normalized:
/// `u = x^{k+r} - b x^{k+r-1} + c x^{k+r-2} + ...`.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct TopCoefficients {
    pub excess: usize,
    pub b: Elem,
    pub c: Elem,
}

/// Distance computations for one code, with cached subset tables.
#[derive(Debug)]
pub struct DistanceEngine {
    code: RsCode,
    sums: OnceLock<std::result::Result<SubsetTable, Error>>,
    pairs: OnceLock<std::result::Result<SubsetTable, Error>>,
    oracle_cap: u64,
    parallelism: Parallelism,
}

impl DistanceEngine {
    pub fn new(code: RsCode) -> DistanceEngine {
        DistanceEngine {
            code,
            sums: OnceLock::new(),
            pairs: OnceLock::new(),
            oracle_cap: oracle_cap_from_env(),
            parallelism: Parallelism::default(),
        }
    }

    pub fn with_oracle_cap(mut self, cap: u64) -> Self {
        self.oracle_cap = cap;
        self
    }

    pub fn with_parallelism(mut self, mode: Parallelism) -> Self {
        self.parallelism = mode;
        self
    }

    pub fn code(&self) -> &RsCode {
        &self.code
    }

    pub fn oracle_cap(&self) -> u64 {
        self.oracle_cap
    }

    fn sum_table(&self) -> Result<&SubsetTable> {
        let code = &self.code;
        self.sums
            .get_or_init(|| SubsetTable::build(code.field(), code.eval_set(), code.k() + 1, false))
            .as_ref()
            .map_err(Clone::clone)
    }

    fn pair_table(&self) -> Result<&SubsetTable> {
        let code = &self.code;
        self.pairs
            .get_or_init(|| SubsetTable::build(code.field(), code.eval_set(), code.k() + 2, true))
            .as_ref()
            .map_err(Clone::clone)
    }

    pub fn top_coefficients(&self, u: &ReceivedWord) -> Option<TopCoefficients> {
        let k = self.code.k();
        let deg = u.degree()?;
        if deg < k + 1 || deg > k + 2 {
            return None;
        }
        let field = self.code.field();
        let monic = u.interpolant().to_monic(field);
        let b = field.neg(monic.coeff(deg - 1));
        let c = if deg >= 2 {
            monic.coeff(deg - 2)
        } else {
            Elem::ZERO
        };
        Some(TopCoefficients {
            excess: deg - k,
            b,
            c,
        })
    }

    fn expect_excess(&self, u: &ReceivedWord, excess: usize) -> Result<TopCoefficients> {
        let k = self.code.k();
        match self.top_coefficients(u) {
            Some(top) if top.excess == excess => Ok(top),
            _ => Err(Error::DegreeMismatch {
                expected: k + excess,
                got: u.degree().map_or("-inf".into(), |d| d.to_string()),
            }),
        }
    }

    /// Distance of a monic word `x^{k+1} - b x^k + ...`.
    pub fn deg_k1_distance(&self, b: Elem) -> Result<DistanceResult> {
        let code = &self.code;
        let (n, k) = (code.n(), code.k());
        if k + 1 >= n {
            return Err(Error::DegreeOutOfRange {
                degree: Some(k + 1),
                k,
                max: n - 1,
            });
        }
        let table = self.sum_table()?;
        Ok(match table.witness(code.field(), k + 1, b, None)? {
            Some(w) => DistanceResult::new(Verdict::Exact(n - k - 1), Method::SubsetDp)
                .with_witness(Witness::roots(w)),
            None => DistanceResult::new(Verdict::Exact(n - k), Method::SubsetDp),
        })
    }

    /// Distance of a monic word `x^{k+2} - b x^{k+1} + c x^k + ...`.
    pub fn deg_k2_distance(&self, b: Elem, c: Elem) -> Result<DistanceResult> {
        let code = &self.code;
        let field = code.field();
        let (n, k) = (code.n(), code.k());
        if k + 2 >= n {
            return Err(Error::DegreeOutOfRange {
                degree: Some(k + 2),
                k,
                max: n - 1,
            });
        }
        let table = self.pair_table()?;
        if let Some(w) = table.witness(field, k + 2, b, Some(c))? {
            return Ok(
                DistanceResult::new(Verdict::Exact(n - k - 2), Method::SubsetDp)
                    .with_witness(Witness::roots(w)),
            );
        }
        // (x - a) * prod (x - x_i): e1 = b - a and e2 = c - a (b - a) on the k+1 roots
        for a in field.elements() {
            let e1 = field.sub(b, a);
            let e2 = field.sub(c, field.mul(a, e1));
            if let Some(w) = table.witness(field, k + 1, e1, Some(e2))? {
                return Ok(
                    DistanceResult::new(Verdict::Exact(n - k - 1), Method::SubsetDp)
                        .with_witness(Witness::with_extra_root(field, w, a)),
                );
            }
        }
        Ok(DistanceResult::new(Verdict::Exact(n - k), Method::SubsetDp))
    }

    pub fn distance_deg_k1(&self, u: &ReceivedWord) -> Result<DistanceResult> {
        let top = self.expect_excess(u, 1)?;
        self.deg_k1_distance(top.b)
    }

    pub fn distance_deg_k2(&self, u: &ReceivedWord) -> Result<DistanceResult> {
        let top = self.expect_excess(u, 2)?;
        self.deg_k2_distance(top.b, top.c)
    }

    /// Degrees `< k`, `k`, `k + 1` and `k + 2` are settled without search
    /// beyond the subset tables; higher degrees are out of reach.
    pub fn subset_distance(&self, u: &ReceivedWord) -> Result<DistanceResult> {
        let (n, k) = (self.code.n(), self.code.k());
        match u.degree() {
            None => Ok(DistanceResult::new(Verdict::Exact(0), Method::SubsetDp)
                .with_clause(Clause::Codeword)),
            Some(d) if d < k => Ok(DistanceResult::new(Verdict::Exact(0), Method::SubsetDp)
                .with_clause(Clause::Codeword)),
            Some(d) if d == k => Ok(DistanceResult::new(Verdict::Exact(n - k), Method::SubsetDp)
                .with_clause(Clause::DegreeK)),
            Some(d) if d == k + 1 => self.distance_deg_k1(u),
            Some(d) if d == k + 2 => self.distance_deg_k2(u),
            degree => Err(Error::DegreeOutOfRange {
                degree,
                k: k + 2,
                max: k + 2,
            }),
        }
    }

    pub fn oracle(&self, u: &ReceivedWord) -> Result<DistanceResult> {
        max_agreement_oracle(&self.code, u, self.oracle_cap, self.parallelism)
    }

    /// The closed-form case for `u`, when the code kind and degree have one.
    pub fn closed_form_case(&self, u: &ReceivedWord) -> Option<ClosedFormCase> {
        let top = self.top_coefficients(u)?;
        let kind = self.code.kind();
        if kind == CodeKind::Generalized {
            return None;
        }
        let c = (top.excess == 2).then_some(top.c);
        Some(ClosedFormCase::new(
            self.code.field(),
            kind,
            self.code.k(),
            top.b,
            c,
        ))
    }

    pub fn closed_form(&self, u: &ReceivedWord) -> Result<DistanceResult> {
        let (n, k) = (self.code.n(), self.code.k());
        match u.degree() {
            None => {
                return Ok(DistanceResult::new(Verdict::Exact(0), Method::ClosedForm)
                    .with_clause(Clause::Codeword))
            }
            Some(d) if d < k => {
                return Ok(DistanceResult::new(Verdict::Exact(0), Method::ClosedForm)
                    .with_clause(Clause::Codeword))
            }
            Some(d) if d == k => {
                return Ok(
                    DistanceResult::new(Verdict::Exact(n - k), Method::ClosedForm)
                        .with_clause(Clause::DegreeK),
                )
            }
            _ => {}
        }
        let case = self.closed_form_case(u).ok_or_else(|| {
            Error::OutOfClosedFormRange(format!(
                "{} code, degree {:?}",
                self.code.kind(),
                u.degree()
            ))
        })?;
        closed_form_distance(self.code.field(), &case)
    }

    /// The cheapest exact method that applies: closed form, then subset
    /// tables, then the oracle. Falls back to the covering-radius bound.
    pub fn distance(&self, u: &ReceivedWord) -> Result<DistanceResult> {
        if let Ok(r) = self.closed_form(u) {
            if matches!(r.verdict, Verdict::Exact(_)) {
                return Ok(r);
            }
        }
        match self.subset_distance(u) {
            Ok(r) => return Ok(r),
            Err(Error::DegreeOutOfRange { .. }) | Err(Error::TooLarge(_)) => {}
            Err(e) => return Err(e),
        }
        match self.oracle(u) {
            Ok(r) => Ok(r),
            Err(Error::TooLarge(_)) => Ok(DistanceResult::new(
                Verdict::UpperBound(self.code.covering_radius()),
                Method::ClosedForm,
            )
            .with_clause(Clause::DegreeBounds)),
            Err(e) => Err(e),
        }
    }

    /// True iff `d(u, C) = n - k`.
    pub fn classify_deep_hole(&self, u: &ReceivedWord) -> Result<(bool, DistanceResult)> {
        let r = self.distance(u)?;
        let radius = self.code.covering_radius();
        match r.verdict {
            Verdict::Exact(d) => Ok((d == radius, r)),
            Verdict::UpperBound(b) if b < radius => Ok((false, r)),
            _ => Err(Error::Undecidable(format!(
                "only {:?} is available and the oracle cap {} is exceeded",
                r.verdict, self.oracle_cap
            ))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use std::sync::Arc;

    fn gf(p: u32, m: u32) -> Arc<Field> {
        Arc::new(Field::new(p, m, None).unwrap())
    }

    /// monic x^{k+r} - b x^{k+r-1} + c x^{k+r-2}
    fn top_word(code: &RsCode, excess: usize, b: Elem, c: Elem) -> ReceivedWord {
        let f = code.field();
        let deg = code.k() + excess;
        let mut coeffs = vec![Elem::ZERO; deg + 1];
        coeffs[deg] = Elem::ONE;
        coeffs[deg - 1] = f.neg(b);
        if excess == 2 {
            coeffs[deg - 2] = f.add(coeffs[deg - 2], c);
        }
        code.word_from_poly(&Poly::from_coeffs(coeffs)).unwrap()
    }

    #[test]
    fn deg_k1_examples() {
        let c4 = RsCode::standard(gf(2, 2), 1).unwrap();
        let e4 = DistanceEngine::new(c4.clone());
        let r = e4
            .distance_deg_k1(&top_word(&c4, 1, Elem(0), Elem(0)))
            .unwrap();
        assert_eq!(r.verdict, Verdict::Exact(3));

        let c8 = RsCode::standard(gf(2, 3), 5).unwrap();
        let e8 = DistanceEngine::new(c8.clone());
        assert_eq!(
            e8.deg_k1_distance(Elem(0)).unwrap().verdict,
            Verdict::Exact(3)
        );

        let c7 = RsCode::primitive(gf(7, 1), 4).unwrap();
        let e7 = DistanceEngine::new(c7.clone());
        let u = top_word(&c7, 1, Elem(0), Elem(0));
        let r = e7.distance_deg_k1(&u).unwrap();
        assert_eq!(r.verdict, Verdict::Exact(2));
        assert!(e7.distance_deg_k2(&u).is_err());
    }

    #[test]
    fn deg_k2_examples() {
        let f = gf(5, 1);
        let code = RsCode::standard(f.clone(), 2).unwrap();
        let engine = DistanceEngine::new(code.clone());
        let u = top_word(&code, 2, Elem(1), Elem(1));
        let r = engine.distance_deg_k2(&u).unwrap();
        assert_eq!(r.verdict, Verdict::Exact(1));
        assert!(r.witness.as_ref().unwrap().verify(&code, &u));
        let u = top_word(&code, 2, Elem(1), Elem(0));
        let r = engine.distance_deg_k2(&u).unwrap();
        assert_eq!(r.verdict, Verdict::Exact(2));
        let w = r.witness.as_ref().unwrap();
        assert!(w.extra_root.is_some());
        assert!(w.verify(&code, &u));

        let f8 = gf(2, 3);
        let code = RsCode::standard(f8.clone(), 1).unwrap();
        let engine = DistanceEngine::new(code.clone());
        for b in f8.elements() {
            let u = top_word(&code, 2, b, f8.mul(b, b));
            assert_eq!(
                engine.distance_deg_k2(&u).unwrap().verdict,
                Verdict::Exact(7)
            );
        }
    }

    #[test]
    fn deep_hole_classification() {
        let f = gf(5, 1);
        let code = RsCode::standard(f.clone(), 2).unwrap();
        let engine = DistanceEngine::new(code.clone());
        let xk = code.word_from_poly(&Poly::monomial(Elem(3), 2)).unwrap();
        assert!(engine.classify_deep_hole(&xk).unwrap().0);
        let cubic = code.word_from_poly(&Poly::monomial(Elem::ONE, 3)).unwrap();
        let (deep, r) = engine.classify_deep_hole(&cubic).unwrap();
        assert!(!deep);
        assert_eq!(r.verdict, Verdict::Exact(2));

        let f8 = gf(2, 3);
        let code = RsCode::standard(f8.clone(), 2).unwrap();
        let engine = DistanceEngine::new(code.clone());
        let quartic = Poly::from_coeffs(vec![Elem(5), Elem(3), Elem(0), Elem(0), Elem(1)]);
        let (deep, r) = engine
            .classify_deep_hole(&code.word_from_poly(&quartic).unwrap())
            .unwrap();
        assert!(deep);
        assert_eq!(r.verdict, Verdict::Exact(6));
    }

    #[test]
    fn json_schema_shape() {
        let code = RsCode::standard(gf(5, 1), 2).unwrap();
        let engine = DistanceEngine::new(code.clone());
        let u = top_word(&code, 2, Elem(1), Elem(1));
        let v: serde_json::Value =
            serde_json::from_str(&engine.distance_deg_k2(&u).unwrap().to_json()).unwrap();
        assert_eq!(v["verdict"], "exact");
        assert_eq!(v["d"], 1);
        assert_eq!(v["method"], "subset_dp");
        assert!(v["case"].is_null());
        assert_eq!(v["witness"]["elements"].as_array().unwrap().len(), 4);
        assert!(v["witness"]["extra_root"].is_null());
        let unknown = DistanceResult::new(Verdict::Unknown, Method::ClosedForm)
            .with_clause(Clause::Uncovered);
        let v: serde_json::Value = serde_json::from_str(&unknown.to_json()).unwrap();
        assert!(v["d"].is_null());
        assert_eq!(v["case"], "uncovered");
        assert!(v["witness"].is_null());
    }

    #[test]
    fn top_coefficients_ignore_lower_terms() {
        let f = gf(7, 1);
        let code = RsCode::standard(f.clone(), 2).unwrap();
        let engine = DistanceEngine::new(code.clone());
        let u = Poly::from_coeffs(vec![Elem(5), Elem(6), Elem(3), Elem(4), Elem(2)]);
        let top = engine
            .top_coefficients(&code.word_from_poly(&u).unwrap())
            .unwrap();
        // monic: divide by 2 (inverse 4): x^4 + 2x^3 + 5x^2 + ...
        assert_eq!(
            top,
            TopCoefficients {
                excess: 2,
                b: Elem(5),
                c: Elem(5)
            }
        );
    }
}
