//! Reed-Solomon codes over an ordered evaluation set.

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::poly::Poly;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CodeKind {
    /// Evaluation set is the whole field.
    Standard,
    /// Evaluation set is the multiplicative group.
    Primitive,
    Generalized,
}

impl fmt::Display for CodeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CodeKind::Standard => "standard",
            CodeKind::Primitive => "primitive",
            CodeKind::Generalized => "generalized",
        })
    }
}

impl std::str::FromStr for CodeKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "standard" => Ok(CodeKind::Standard),
            "primitive" => Ok(CodeKind::Primitive),
            "generalized" => Ok(CodeKind::Generalized),
            _ => Err(Error::parse(0, format!("unknown code kind `{s}`"))),
        }
    }
}

/// A generalized Reed-Solomon code: messages of length `k` evaluated on `D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RsCode {
    field: Arc<Field>,
    eval_set: Vec<Elem>,
    k: usize,
    kind: CodeKind,
}

impl RsCode {
    /// `D = F_q` in ascending encoding order.
    pub fn standard(field: Arc<Field>, k: usize) -> Result<RsCode> {
        let d = field.elements().collect();
        RsCode::new(field, d, k)
    }

    /// `D = F_q^*` in ascending encoding order.
    pub fn primitive(field: Arc<Field>, k: usize) -> Result<RsCode> {
        let d = field.units().collect();
        RsCode::new(field, d, k)
    }

    pub fn with_kind(field: Arc<Field>, kind: CodeKind, k: usize) -> Result<RsCode> {
        match kind {
            CodeKind::Standard => RsCode::standard(field, k),
            CodeKind::Primitive => RsCode::primitive(field, k),
            CodeKind::Generalized => Err(Error::InvalidCode(
                "a generalized code needs an explicit evaluation set".into(),
            )),
        }
    }

    /// Arbitrary evaluation set; the kind is derived from its contents.
    pub fn new(field: Arc<Field>, eval_set: Vec<Elem>, k: usize) -> Result<RsCode> {
        let mut seen = HashSet::with_capacity(eval_set.len());
        for &x in &eval_set {
            if !field.contains(x) {
                return Err(Error::FieldMismatch {
                    value: x.0 as u64,
                    q: field.q(),
                });
            }
            if !seen.insert(x) {
                return Err(Error::DuplicateNode(x.0));
            }
        }
        let n = eval_set.len();
        if k == 0 || k >= n {
            return Err(Error::InvalidCode(format!(
                "need 1 <= k < n, got k={k}, n={n}"
            )));
        }
        let q = field.q() as usize;
        let kind = if n == q {
            CodeKind::Standard
        } else if n == q - 1 && !seen.contains(&Elem::ZERO) {
            CodeKind::Primitive
        } else {
            CodeKind::Generalized
        };
        Ok(RsCode {
            field,
            eval_set,
            k,
            kind,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn field_arc(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn eval_set(&self) -> &[Elem] {
        &self.eval_set
    }

    pub fn n(&self) -> usize {
        self.eval_set.len()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn kind(&self) -> CodeKind {
        self.kind
    }

    pub fn min_distance(&self) -> usize {
        self.n() - self.k + 1
    }

    pub fn covering_radius(&self) -> usize {
        self.n() - self.k
    }

    /// Builds a received word from values aligned with the evaluation set.
    pub fn word(&self, values: Vec<Elem>) -> Result<ReceivedWord> {
        if values.len() != self.n() {
            return Err(Error::LengthMismatch {
                expected: self.n(),
                got: values.len(),
            });
        }
        let points: Vec<(Elem, Elem)> = self
            .eval_set
            .iter()
            .copied()
            .zip(values.iter().copied())
            .collect();
        let interp = Poly::interpolate(&self.field, &points)?;
        Ok(ReceivedWord { values, interp })
    }

    /// The word sampled from `u(x)` on the evaluation set; `deg u <= n - 1`.
    pub fn word_from_poly(&self, u: &Poly) -> Result<ReceivedWord> {
        if let Some(d) = u.degree() {
            if d >= self.n() {
                return Err(Error::DegreeMismatch {
                    expected: self.n() - 1,
                    got: d.to_string(),
                });
            }
        }
        let u = Poly::from_coeffs_in(&self.field, u.coeffs().to_vec())?;
        let values = self
            .eval_set
            .iter()
            .map(|&x| u.eval(&self.field, x))
            .collect();
        Ok(ReceivedWord { values, interp: u })
    }

    /// Evaluates the message polynomial `a_0 + a_1 x + ... + a_{k-1} x^{k-1}`.
    pub fn encode(&self, message: &[Elem]) -> Result<ReceivedWord> {
        if message.len() != self.k {
            return Err(Error::LengthMismatch {
                expected: self.k,
                got: message.len(),
            });
        }
        self.word_from_poly(&Poly::from_coeffs_in(&self.field, message.to_vec())?)
    }

    /// Degree of the interpolant; `None` for the zero word.
    pub fn word_degree(&self, u: &ReceivedWord) -> Option<usize> {
        u.degree()
    }

    pub fn is_codeword(&self, u: &ReceivedWord) -> bool {
        u.degree().is_none_or(|d| d < self.k)
    }

    /// `(n - deg u, n - k)`, which brackets the error distance.
    pub fn degree_bounds(&self, u: &ReceivedWord) -> Result<(usize, usize)> {
        match u.degree() {
            Some(d) if d >= self.k && d < self.n() => Ok((self.n() - d, self.n() - self.k)),
            degree => Err(Error::DegreeOutOfRange {
                degree,
                k: self.k,
                max: self.n() - 1,
            }),
        }
    }
}

/// A vector in `F_q^n` together with its interpolating polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReceivedWord {
    values: Vec<Elem>,
    interp: Poly,
}

impl ReceivedWord {
    pub fn values(&self) -> &[Elem] {
        &self.values
    }

    pub fn interpolant(&self) -> &Poly {
        &self.interp
    }

    pub fn degree(&self) -> Option<usize> {
        self.interp.degree()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

pub fn hamming_distance(a: &[Elem], b: &[Elem]) -> Result<usize> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            expected: a.len(),
            got: b.len(),
        });
    }
    Ok(a.iter().zip(b).filter(|(x, y)| x != y).count())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u32, m: u32) -> Arc<Field> {
        Arc::new(Field::new(p, m, None).unwrap())
    }

    fn elems(v: &[u32]) -> Vec<Elem> {
        v.iter().map(|&x| Elem(x)).collect()
    }

    #[test]
    fn encode_examples() {
        let code = RsCode::standard(gf(5, 1), 2).unwrap();
        let zero = code.encode(&elems(&[0, 0])).unwrap();
        assert_eq!(zero.values(), elems(&[0; 5]));
        let w = code.encode(&elems(&[1, 1])).unwrap();
        assert_eq!(w.values(), elems(&[1, 2, 3, 4, 0]));
        assert!(code.word_degree(&w).unwrap() <= 1);
        assert!(matches!(
            code.encode(&elems(&[1])),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn kinds_are_derived() {
        let f = gf(7, 1);
        assert_eq!(
            RsCode::standard(f.clone(), 2).unwrap().kind(),
            CodeKind::Standard
        );
        assert_eq!(
            RsCode::primitive(f.clone(), 2).unwrap().kind(),
            CodeKind::Primitive
        );
        let shuffled = RsCode::new(f.clone(), elems(&[6, 5, 4, 3, 2, 1]), 2).unwrap();
        assert_eq!(shuffled.kind(), CodeKind::Primitive);
        let g = RsCode::new(f.clone(), elems(&[0, 1, 2, 3]), 2).unwrap();
        assert_eq!(g.kind(), CodeKind::Generalized);
        assert_eq!(g.covering_radius(), 2);
        assert_eq!(g.min_distance(), 3);
        assert!(RsCode::new(f.clone(), elems(&[1, 1, 2]), 1).is_err());
        assert!(RsCode::new(f, elems(&[1, 2]), 2).is_err());
    }

    #[test]
    fn word_degree_examples() {
        let f = gf(7, 1);
        let code = RsCode::standard(f.clone(), 3).unwrap();
        let xk = Poly::monomial(Elem::ONE, 3);
        let w = code
            .word(code.word_from_poly(&xk).unwrap().values().to_vec())
            .unwrap();
        assert_eq!(code.word_degree(&w), Some(3));
        let u = Poly::from_coeffs(elems(&[3, 0, 0, 0, 0, 1]));
        let values: Vec<Elem> = code.eval_set().iter().map(|&x| u.eval(&f, x)).collect();
        let w = code.word(values).unwrap();
        assert_eq!(code.word_degree(&w), Some(5));
        assert_eq!(w.interpolant(), &u);
    }

    #[test]
    fn hamming_examples() {
        assert_eq!(
            hamming_distance(&elems(&[0, 1, 2]), &elems(&[0, 2, 2])).unwrap(),
            1
        );
        assert_eq!(
            hamming_distance(&elems(&[4, 4]), &elems(&[4, 4])).unwrap(),
            0
        );
        assert!(hamming_distance(&elems(&[1]), &elems(&[1, 2])).is_err());
    }

    #[test]
    fn distinct_codewords_are_far_apart() {
        let code = RsCode::standard(gf(5, 1), 2).unwrap();
        let words: Vec<_> = (0..25u32)
            .map(|i| code.encode(&elems(&[i % 5, i / 5])).unwrap())
            .collect();
        for a in &words {
            for b in &words {
                let d = hamming_distance(a.values(), b.values()).unwrap();
                assert!(a == b || d >= code.min_distance());
            }
        }
    }

    #[test]
    fn degree_bounds_examples() {
        let f = gf(7, 1);
        let code = RsCode::standard(f, 2).unwrap();
        let at = |deg: usize| {
            code.word_from_poly(&Poly::monomial(Elem::ONE, deg))
                .unwrap()
        };
        assert_eq!(code.degree_bounds(&at(2)).unwrap(), (5, 5));
        assert_eq!(code.degree_bounds(&at(3)).unwrap(), (4, 5));
        assert_eq!(code.degree_bounds(&at(6)).unwrap(), (1, 5));
        assert!(matches!(
            code.degree_bounds(&at(1)),
            Err(Error::DegreeOutOfRange { .. })
        ));
        let zero = code.word(vec![Elem::ZERO; 7]).unwrap();
        assert!(code.is_codeword(&zero));
        assert!(code.degree_bounds(&zero).is_err());
    }
}
