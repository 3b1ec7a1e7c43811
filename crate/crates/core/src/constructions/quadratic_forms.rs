use crate::error::{Error, Result};
use crate::field::{Elem, Field};

/// `a_1 x_1^2 + ... + a_n x_n^2 = b` over a field of odd characteristic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticForm {
    coeffs: Vec<Elem>,
    rhs: Elem,
}

impl QuadraticForm {
    pub fn new(field: &Field, coeffs: Vec<Elem>, rhs: Elem) -> Result<QuadraticForm> {
        if field.p() == 2 {
            return Err(Error::CharacteristicTwo);
        }
        if coeffs.is_empty() {
            return Err(Error::OutOfRange(
                "a quadratic form needs at least one variable".into(),
            ));
        }
        for &a in coeffs.iter().chain([&rhs]) {
            if !field.contains(a) {
                return Err(Error::FieldMismatch {
                    value: a.0 as u64,
                    q: field.q(),
                });
            }
        }
        if coeffs.iter().any(|a| a.is_zero()) {
            return Err(Error::ZeroCoefficient);
        }
        Ok(QuadraticForm { coeffs, rhs })
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn rhs(&self) -> Elem {
        self.rhs
    }

    /// Number of solutions in `F_q^n` by the character-sum formula. For even
    /// `n` the weight is `v(0) = q - 1` and `v(b) = -1` otherwise.
    pub fn count_solutions(&self, field: &Field) -> Result<u128> {
        let q = field.q() as i128;
        let n = self.coeffs.len() as u32;
        let prod = self
            .coeffs
            .iter()
            .fold(Elem::ONE, |acc, &a| field.mul(acc, a));
        let sign = |e: u32| {
            if e.is_multiple_of(2) {
                Elem::ONE
            } else {
                field.neg(Elem::ONE)
            }
        };
        let count = if n % 2 == 1 {
            let h = (n - 1) / 2;
            let arg = field.mul(sign(h), field.mul(self.rhs, prod));
            q.pow(n - 1) + q.pow(h) * field.quadratic_character(arg)? as i128
        } else {
            let v = if self.rhs.is_zero() { q - 1 } else { -1 };
            let arg = field.mul(sign(n / 2), prod);
            q.pow(n - 1) + v * q.pow((n - 2) / 2) * field.quadratic_character(arg)? as i128
        };
        Ok(count as u128)
    }
}

/// Counts solutions by enumerating all `q^n` tuples; refuses more than `cap`.
pub fn brute_force_count(field: &Field, form: &QuadraticForm, cap: u64) -> Result<u64> {
    let q = field.q() as u64;
    let n = form.coeffs.len() as u32;
    let total = q.checked_pow(n).filter(|&t| t <= cap).ok_or_else(|| {
        Error::TooLarge(format!("q^n = {q}^{n} exceeds the enumeration cap {cap}"))
    })?;
    let squares: Vec<Elem> = field.elements().map(|x| field.mul(x, x)).collect();
    let mut count = 0;
    for mut idx in 0..total {
        let mut acc = Elem::ZERO;
        for &a in &form.coeffs {
            acc = field.add(acc, field.mul(a, squares[(idx % q) as usize]));
            idx /= q;
        }
        if acc == form.rhs {
            count += 1;
        }
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn form(f: &Field, a: &[u32], b: u32) -> QuadraticForm {
        QuadraticForm::new(f, a.iter().map(|&x| Elem(x)).collect(), Elem(b)).unwrap()
    }

    #[test]
    fn small_examples() {
        let f3 = Field::prime(3).unwrap();
        let one = form(&f3, &[1], 0);
        assert_eq!(one.count_solutions(&f3).unwrap(), 1);
        assert_eq!(brute_force_count(&f3, &one, 1000).unwrap(), 1);
        let circle = form(&f3, &[1, 1], 1);
        assert_eq!(circle.count_solutions(&f3).unwrap(), 4);
        assert_eq!(brute_force_count(&f3, &circle, 1000).unwrap(), 4);

        // x^2 + y^2 + z^2 = 0 over GF(5): 25 + 5 * eta(0) = 25
        let f5 = Field::prime(5).unwrap();
        let sphere = form(&f5, &[1, 1, 1], 0);
        assert_eq!(brute_force_count(&f5, &sphere, 1000).unwrap(), 25);
        assert_eq!(sphere.count_solutions(&f5).unwrap(), 25);
    }

    #[test]
    fn formula_matches_enumeration() {
        for (p, m) in [(3, 1), (5, 1), (7, 1), (3, 2)] {
            let f = Field::new(p, m, None).unwrap();
            for n in 1..=3usize {
                let units: Vec<Elem> = f.units().collect();
                // every coefficient vector for n <= 2, a diagonal sweep for n = 3
                let vectors: Vec<Vec<Elem>> = if n <= 2 {
                    (0..units.len().pow(n as u32))
                        .map(|mut i| {
                            (0..n)
                                .map(|_| {
                                    let a = units[i % units.len()];
                                    i /= units.len();
                                    a
                                })
                                .collect()
                        })
                        .collect()
                } else {
                    units.iter().map(|&a| vec![a, Elem::ONE, a]).collect()
                };
                for a in vectors {
                    for b in f.elements() {
                        let qf = QuadraticForm::new(&f, a.clone(), b).unwrap();
                        assert_eq!(
                            qf.count_solutions(&f).unwrap(),
                            brute_force_count(&f, &qf, 1 << 20).unwrap() as u128
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn rejects_bad_input() {
        let f2 = Field::prime(2).unwrap();
        assert_eq!(
            QuadraticForm::new(&f2, vec![Elem(1)], Elem(0)),
            Err(Error::CharacteristicTwo)
        );
        let f5 = Field::prime(5).unwrap();
        assert_eq!(
            QuadraticForm::new(&f5, vec![Elem(1), Elem(0)], Elem(0)),
            Err(Error::ZeroCoefficient)
        );
        let big = form(&f5, &[1, 1, 1], 0);
        assert!(brute_force_count(&f5, &big, 100).is_err());
    }
}
