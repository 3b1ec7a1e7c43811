//! Reachability of `(size, e1, e2)` over subsets of an evaluation set.
//!
//! Adding an element `y` to a subset with symmetric functions `(e1, e2)` gives
//! `(e1 + y, e2 + e1 * y)`, so a layered table over the elements answers every
//! prescribed-symmetric-function query for the set at once.

use crate::error::{Error, Result};
use crate::field::{Elem, Field};

/// Upper bound on the bits stored across all layers.
pub const MAX_TABLE_BITS: u64 = 1 << 30;

#[derive(Clone, Debug)]
pub struct SubsetTable {
    elements: Vec<Elem>,
    q: usize,
    e2_dim: usize,
    max_count: usize,
    /// `layers[i]` holds the states reachable with elements `i..`.
    layers: Vec<Vec<u64>>,
}

#[inline]
fn get(bits: &[u64], i: usize) -> bool {
    bits[i >> 6] >> (i & 63) & 1 == 1
}

#[inline]
fn set(bits: &mut [u64], i: usize) {
    bits[i >> 6] |= 1 << (i & 63);
}

impl SubsetTable {
    /// Table over the elements of `domain` (sorted by encoding), for subset sizes
    /// up to `max_count`. With `track_e2 == false` only `(size, e1)` is tracked.
    pub fn build(
        field: &Field,
        domain: &[Elem],
        max_count: usize,
        track_e2: bool,
    ) -> Result<SubsetTable> {
        let mut elements = domain.to_vec();
        elements.sort_unstable();
        elements.dedup();
        let n = elements.len();
        let max_count = max_count.min(n);
        let q = field.q() as usize;
        let e2_dim = if track_e2 { q } else { 1 };
        let states = (max_count + 1) * q * e2_dim;
        let total = states as u64 * (n as u64 + 1);
        if total > MAX_TABLE_BITS {
            return Err(Error::TooLarge(format!(
                "subset table needs {total} bits (cap {MAX_TABLE_BITS})"
            )));
        }
        let words = states.div_ceil(64);
        let mut layers = vec![vec![0u64; words]; n + 1];
        set(&mut layers[n], 0);
        for i in (0..n).rev() {
            let y = elements[i];
            let mut next = layers[i + 1].clone();
            let prev = &layers[i + 1];
            for (w, &word) in prev.iter().enumerate() {
                let mut bits = word;
                while bits != 0 {
                    let idx = (w << 6) | bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    let s2 = idx % e2_dim;
                    let s1 = (idx / e2_dim) % q;
                    let c = idx / (e2_dim * q);
                    if c >= max_count {
                        continue;
                    }
                    let s1e = Elem(s1 as u32);
                    let n1 = field.add(s1e, y).0 as usize;
                    let n2 = if track_e2 {
                        field.add(Elem(s2 as u32), field.mul(s1e, y)).0 as usize
                    } else {
                        0
                    };
                    set(&mut next, ((c + 1) * q + n1) * e2_dim + n2);
                }
            }
            layers[i] = next;
        }
        Ok(SubsetTable {
            elements,
            q,
            e2_dim,
            max_count,
            layers,
        })
    }

    pub fn elements(&self) -> &[Elem] {
        &self.elements
    }

    pub fn max_count(&self) -> usize {
        self.max_count
    }

    pub fn tracks_e2(&self) -> bool {
        self.e2_dim > 1
    }

    fn reachable(&self, layer: usize, t: usize, e1: Elem, e2: Elem) -> bool {
        let e2 = if self.e2_dim == 1 { 0 } else { e2.0 as usize };
        get(
            &self.layers[layer],
            (t * self.q + e1.0 as usize) * self.e2_dim + e2,
        )
    }

    fn check_query(&self, t: usize, e2: Option<Elem>) -> Result<bool> {
        if e2.is_some() && !self.tracks_e2() {
            return Err(Error::OutOfRange("table was built without e2".into()));
        }
        if t > self.elements.len() {
            return Ok(false);
        }
        if t > self.max_count {
            return Err(Error::OutOfRange(format!(
                "subset size {t} exceeds table bound {}",
                self.max_count
            )));
        }
        Ok(true)
    }

    /// Is there a `t`-subset with sum `e1` (and pair-product sum `e2`, if given)?
    pub fn exists(&self, t: usize, e1: Elem, e2: Option<Elem>) -> Result<bool> {
        if !self.check_query(t, e2)? {
            return Ok(false);
        }
        Ok(match e2 {
            Some(e2) => self.reachable(0, t, e1, e2),
            None => (0..self.e2_dim).any(|s2| self.reachable(0, t, e1, Elem(s2 as u32))),
        })
    }

    /// The lexicographically smallest (by encoding) matching subset, ascending.
    pub fn witness(
        &self,
        field: &Field,
        t: usize,
        e1: Elem,
        e2: Option<Elem>,
    ) -> Result<Option<Vec<Elem>>> {
        if !self.check_query(t, e2)? {
            return Ok(None);
        }
        // candidate (e1, e2) targets still consistent with the choices so far
        let mut targets: Vec<(Elem, Elem)> = match e2 {
            Some(e2) => vec![(e1, e2)],
            None => (0..self.e2_dim).map(|s2| (e1, Elem(s2 as u32))).collect(),
        };
        targets.retain(|&(a, b)| self.reachable(0, t, a, b));
        if targets.is_empty() {
            return Ok(None);
        }
        let mut chosen = Vec::with_capacity(t);
        let mut remaining = t;
        for (i, &y) in self.elements.iter().enumerate() {
            if remaining == 0 {
                break;
            }
            let rest: Vec<(Elem, Elem)> = targets
                .iter()
                .map(|&(a, b)| {
                    let a_rest = field.sub(a, y);
                    let b_rest = if self.tracks_e2() {
                        field.sub(b, field.mul(y, a_rest))
                    } else {
                        Elem::ZERO
                    };
                    (a_rest, b_rest)
                })
                .filter(|&(a, b)| self.reachable(i + 1, remaining - 1, a, b))
                .collect();
            if !rest.is_empty() {
                chosen.push(y);
                remaining -= 1;
                targets = rest;
            } else {
                targets.retain(|&(a, b)| self.reachable(i + 1, remaining, a, b));
            }
        }
        debug_assert_eq!(remaining, 0);
        Ok(Some(chosen))
    }
}

/// One-shot query: `t` distinct elements of `domain` with prescribed `e1`
/// (and `e2`). Returns the lexicographically smallest witness, if any.
pub fn subset_symmetric_dp(
    field: &Field,
    domain: &[Elem],
    t: usize,
    e1: Elem,
    e2: Option<Elem>,
) -> Result<Option<Vec<Elem>>> {
    if t > domain.len() {
        return Ok(None);
    }
    let table = SubsetTable::build(field, domain, t, e2.is_some())?;
    table.witness(field, t, e1, e2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::SymmetricProfile;

    fn gf(p: u32, m: u32) -> Field {
        Field::new(p, m, None).unwrap()
    }

    #[test]
    fn empty_subset() {
        let f = gf(5, 1);
        let d: Vec<Elem> = f.elements().collect();
        assert_eq!(
            subset_symmetric_dp(&f, &d, 0, Elem::ZERO, Some(Elem::ZERO)).unwrap(),
            Some(vec![])
        );
        assert_eq!(subset_symmetric_dp(&f, &d, 0, Elem(1), None).unwrap(), None);
    }

    #[test]
    fn pairs_never_cancel_in_characteristic_two() {
        let f = gf(2, 2);
        let d: Vec<Elem> = f.elements().collect();
        assert_eq!(
            subset_symmetric_dp(&f, &d, 2, Elem::ZERO, None).unwrap(),
            None
        );
    }

    #[test]
    fn all_but_one_element() {
        for (p, m) in [(3, 1), (2, 2), (5, 1), (2, 3), (3, 2)] {
            let f = gf(p, m);
            let d: Vec<Elem> = f.elements().collect();
            for b in f.elements() {
                let w = subset_symmetric_dp(&f, &d, f.q() as usize - 1, b, None)
                    .unwrap()
                    .unwrap();
                let expect: Vec<Elem> = f.elements().filter(|&x| x != f.neg(b)).collect();
                assert_eq!(w, expect);
            }
        }
    }

    #[test]
    fn gf3_pair_with_product() {
        let f = gf(3, 1);
        let d: Vec<Elem> = f.elements().collect();
        assert_eq!(
            subset_symmetric_dp(&f, &d, 2, Elem(0), Some(Elem(2))).unwrap(),
            Some(vec![Elem(1), Elem(2)])
        );
    }

    #[test]
    fn table_matches_enumeration() {
        for (p, m) in [(2, 2), (3, 1), (5, 1), (7, 1), (2, 3), (3, 2)] {
            let f = gf(p, m);
            let d: Vec<Elem> = f.elements().collect();
            let n = d.len();
            let table = SubsetTable::build(&f, &d, n, true).unwrap();
            let mut seen = std::collections::HashSet::new();
            let mut first: std::collections::HashMap<(usize, Elem, Elem), Vec<Elem>> =
                Default::default();
            // masks in an order that visits lexicographically smaller sorted subsets first is
            // awkward; collect all and take the minimum instead
            for mask in 0u32..(1 << n) {
                let s: Vec<Elem> = (0..n)
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| d[i])
                    .collect();
                let prof = SymmetricProfile::of(&f, &s);
                let key = (s.len(), prof.e1, prof.e2);
                seen.insert(key);
                let entry = first.entry(key).or_insert_with(|| s.clone());
                if s < *entry {
                    *entry = s;
                }
            }
            for t in 0..=n {
                for e1 in f.elements() {
                    for e2 in f.elements() {
                        let key = (t, e1, e2);
                        assert_eq!(table.exists(t, e1, Some(e2)).unwrap(), seen.contains(&key));
                        let w = table.witness(&f, t, e1, Some(e2)).unwrap();
                        assert_eq!(w.as_ref(), first.get(&key));
                    }
                }
            }
        }
    }

    #[test]
    fn projection_without_e2() {
        let f = gf(7, 1);
        let d: Vec<Elem> = f.units().collect();
        let full = SubsetTable::build(&f, &d, 6, true).unwrap();
        let flat = SubsetTable::build(&f, &d, 6, false).unwrap();
        for t in 0..=6 {
            for e1 in f.elements() {
                assert_eq!(
                    full.exists(t, e1, None).unwrap(),
                    flat.exists(t, e1, None).unwrap()
                );
                assert_eq!(
                    full.witness(&f, t, e1, None).unwrap(),
                    flat.witness(&f, t, e1, None).unwrap()
                );
            }
        }
        assert!(flat.exists(2, Elem(0), Some(Elem(0))).is_err());
    }
}
