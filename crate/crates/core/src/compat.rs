//! Compatibility degree, the two-element sets `E(alpha, alpha')` and the
//! second sum `alpha [+] alpha'`.
//!
//! The degree is read off after moving the first argument to some `-alpha_j`:
//! `(-alpha_j || beta) = max([beta : alpha_j], 0)` and the degree is invariant
//! under `tau_+`, `tau_-`.

use std::collections::BTreeSet;

use crate::cartan::{RootCatalog, RootVec, Sign};
use crate::error::{consistency, Error, Result};
use crate::exec;
use crate::report::Check;
use crate::tau::TauWord;

/// Shortest alternating word `w` with `w(alpha) = -alpha_j`; words starting
/// with `+` win ties. Returns `(w, j)`.
pub fn transport_to_negative(catalog: &RootCatalog, idx: usize) -> Result<(TauWord, usize)> {
    if let Some(j) = catalog.as_neg_simple(idx) {
        return Ok((TauWord::identity(), j));
    }
    let h = catalog.coxeter_number();
    for len in 1..=h + 2 {
        for start in [Sign::Plus, Sign::Minus] {
            let w = TauWord::alternating(start, len);
            if let Some(j) = catalog.as_neg_simple(w.apply_index(catalog, idx)) {
                return Ok((w, j));
            }
        }
    }
    Err(consistency(format!(
        "{}: no word of length <= h+2 sends {} into -Pi",
        catalog.cartan_type(),
        catalog.root(idx)
    )))
}

/// Degree computed from scratch, without a table.
pub fn compatibility_degree(catalog: &RootCatalog, a: usize, b: usize) -> Result<u32> {
    let (w, j) = transport_to_negative(catalog, a)?;
    Ok(degree_after(catalog, &w, j, b))
}

fn degree_after(catalog: &RootCatalog, w: &TauWord, j: usize, b: usize) -> u32 {
    let moved = catalog.root(w.apply_index(catalog, b));
    moved[j].max(0) as u32
}

pub fn compatible(catalog: &RootCatalog, a: usize, b: usize) -> Result<bool> {
    Ok(compatibility_degree(catalog, a, b)? == 0)
}

/// All pairwise degrees plus the transport word of every root.
#[derive(Debug, Clone)]
pub struct CompatTable {
    size: usize,
    degree: Vec<u32>,
    transports: Vec<(TauWord, usize)>,
}

impl CompatTable {
    pub fn new(catalog: &RootCatalog) -> Result<Self> {
        let size = catalog.len();
        let transports = (0..size)
            .map(|a| transport_to_negative(catalog, a))
            .collect::<Result<Vec<_>>>()?;
        let rows = exec::map(&transports, |(w, j)| {
            (0..size)
                .map(|b| degree_after(catalog, w, *j, b))
                .collect::<Vec<u32>>()
        });
        Ok(CompatTable {
            size,
            degree: rows.concat(),
            transports,
        })
    }

    pub fn len(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    #[inline]
    pub fn degree(&self, a: usize, b: usize) -> u32 {
        self.degree[a * self.size + b]
    }

    #[inline]
    pub fn compatible(&self, a: usize, b: usize) -> bool {
        self.degree(a, b) == 0
    }

    /// Both `(a || b)` and `(b || a)` equal 1.
    #[inline]
    pub fn mutual_one(&self, a: usize, b: usize) -> bool {
        self.degree(a, b) == 1 && self.degree(b, a) == 1
    }

    pub fn transport(&self, a: usize) -> &(TauWord, usize) {
        &self.transports[a]
    }

    /// Ordered pairs `(a, b)` with mutual degree 1, ascending.
    pub fn mutual_one_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.size {
            for b in 0..self.size {
                if self.mutual_one(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }
}

/// The set `E(alpha, alpha') = {alpha + alpha', alpha [+] alpha'}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ESet {
    pub sum: RootVec,
    pub subsum: RootVec,
}

fn require_mutual_one(table: &CompatTable, a: usize, b: usize) -> Result<()> {
    if table.mutual_one(a, b) {
        Ok(())
    } else {
        Err(Error::Precondition(format!(
            "second sum needs mutual compatibility degree 1, got ({}, {}) for indices {a}, {b}",
            table.degree(a, b),
            table.degree(b, a)
        )))
    }
}

/// `(-alpha_j) [+] gamma = gamma - alpha_j + sum_{i != j} a_ij alpha_i`.
fn subplus_minus_simple(catalog: &RootCatalog, j: usize, gamma: &RootVec) -> RootVec {
    let n = catalog.rank();
    let mut out = gamma.clone();
    out.coords_mut()[j] -= 1;
    for i in 0..n {
        if i != j {
            out.coords_mut()[i] += catalog.a(i, j);
        }
    }
    out
}

/// `alpha [+] alpha'` for catalog indices with mutual degree 1.
///
/// `alpha'` is moved to `-alpha_j` by its transport word `w`; there both
/// elements of `E` are explicit. Pulled back through `w^{-1}`, one of them is
/// `alpha + alpha'` and the other is the answer.
pub fn subplus(
    catalog: &RootCatalog,
    table: &CompatTable,
    a: usize,
    a_prime: usize,
) -> Result<RootVec> {
    require_mutual_one(table, a, a_prime)?;
    let n = catalog.rank();
    if n == 1 {
        return Ok(RootVec::zero(1));
    }
    let sum = catalog.root(a) + catalog.root(a_prime);
    let (w, j) = table.transport(a_prime);
    let moved = catalog.root(w.apply_index(catalog, a));
    let inv = w.inverse();
    let plain = inv.apply(catalog, &(moved + &RootVec::neg_simple(n, *j)));
    let special = inv.apply(catalog, &subplus_minus_simple(catalog, *j, moved));
    match (plain == sum, special == sum) {
        (true, false) => Ok(special),
        (false, true) => Ok(plain),
        _ => Err(consistency(format!(
            "E-set for {} and {} does not single out the sum: {plain}, {special}",
            catalog.root(a),
            catalog.root(a_prime)
        ))),
    }
}

pub fn e_set(catalog: &RootCatalog, table: &CompatTable, a: usize, a_prime: usize) -> Result<ESet> {
    let subsum = subplus(catalog, table, a, a_prime)?;
    Ok(ESet {
        sum: catalog.root(a) + catalog.root(a_prime),
        subsum,
    })
}

/// For every mutual-degree-1 pair and every simple index: a positive
/// coefficient in `alpha [+] alpha'` forces one in `alpha + alpha'`.
pub fn check_second_term(catalog: &RootCatalog, table: &CompatTable) -> Check {
    let pairs = table.mutual_one_pairs();
    let parts = exec::map(&pairs, |&(a, b)| {
        let mut check = Check::new("second sum coefficient signs");
        match e_set(catalog, table, a, b) {
            Ok(e) => {
                let bad: Vec<usize> = (0..catalog.rank())
                    .filter(|&i| e.subsum[i] > 0 && e.sum[i] <= 0)
                    .collect();
                check.record(bad.is_empty(), || {
                    let labels: Vec<String> =
                        bad.iter().map(|&i| catalog.simple_label(i)).collect();
                    format!(
                        "{} [+] {} = {} but sum {} is not positive at {}",
                        catalog.root(a),
                        catalog.root(b),
                        e.subsum,
                        e.sum,
                        labels.join(",")
                    )
                });
            }
            Err(err) => check.fail(err.to_string()),
        }
        check
    });
    let mut out = Check::new("second sum coefficient signs");
    for p in parts {
        out.merge(p);
    }
    out
}

/// `{ sigma(sigma^{-1} alpha + sigma^{-1} alpha') }` over all alternating
/// words of length at most `h+2`.
pub fn sigma_sums(catalog: &RootCatalog, a: usize, b: usize) -> BTreeSet<RootVec> {
    let h = catalog.coxeter_number();
    let mut out = BTreeSet::new();
    out.insert(catalog.root(a) + catalog.root(b));
    for len in 1..=h + 2 {
        for start in [Sign::Plus, Sign::Minus] {
            let sigma = TauWord::alternating(start, len);
            let inv = sigma.inverse();
            let x = inv.apply_index(catalog, a);
            let y = inv.apply_index(catalog, b);
            out.insert(sigma.apply(catalog, &(catalog.root(x) + catalog.root(y))));
        }
    }
    out
}

/// The set of sigma-sums is exactly `E(alpha, alpha')` for every
/// mutual-degree-1 pair (a single element in rank 1).
pub fn check_e_set_dichotomy(catalog: &RootCatalog, table: &CompatTable) -> Check {
    let pairs = table.mutual_one_pairs();
    let parts = exec::map(&pairs, |&(a, b)| {
        let mut check = Check::new("E-set dichotomy");
        let got = sigma_sums(catalog, a, b);
        match e_set(catalog, table, a, b) {
            Ok(e) => {
                let want: BTreeSet<RootVec> = [e.sum, e.subsum].into_iter().collect();
                let size = if catalog.rank() == 1 { 1 } else { 2 };
                check.record(got == want && got.len() == size, || {
                    format!(
                        "{} , {}: sigma-sums {:?} vs E {:?}",
                        catalog.root(a),
                        catalog.root(b),
                        got,
                        want
                    )
                });
            }
            Err(err) => check.fail(err.to_string()),
        }
        check
    });
    let mut out = Check::new("E-set dichotomy");
    for p in parts {
        out.merge(p);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::{build_root_system, CartanType};

    fn cat(s: &str) -> RootCatalog {
        build_root_system(s.parse().unwrap()).unwrap()
    }

    fn idx(c: &RootCatalog, v: &[i64]) -> usize {
        c.index_of(&RootVec::from_slice(v)).unwrap()
    }

    #[test]
    fn transport_examples() {
        let c = cat("A2");
        let (w, j) = transport_to_negative(&c, 0).unwrap();
        assert!(w.is_empty());
        assert_eq!(j, 0);
        let (w, j) = transport_to_negative(&c, idx(&c, &[1, 1])).unwrap();
        assert_eq!(w.signs(), &[Sign::Plus, Sign::Minus]);
        assert_eq!(j, 1);

        let e6 = cat("E6");
        let top = idx(&e6, &[1, 2, 2, 3, 2, 1]);
        let (w, j) = transport_to_negative(&e6, top).unwrap();
        assert!(w.len() <= 14);
        assert_eq!(w.apply_index(&e6, top), j);
    }

    #[test]
    fn a2_degrees() {
        let c = cat("A2");
        let a1 = idx(&c, &[1, 0]);
        let a2 = idx(&c, &[0, 1]);
        assert_eq!(compatibility_degree(&c, a1, a2).unwrap(), 1);
        assert!(compatible(&c, 0, a2).unwrap());
        assert!(!compatible(&c, a1, a2).unwrap());
    }

    #[test]
    fn a3_same_orbit_crossing() {
        let c = cat("A3");
        assert!(!compatible(&c, idx(&c, &[0, 1, 0]), idx(&c, &[1, 1, 1])).unwrap());
    }

    #[test]
    fn degree_from_minus_simple_is_coefficient() {
        for t in CartanType::all_up_to_rank(6) {
            let c = build_root_system(t).unwrap();
            let table = CompatTable::new(&c).unwrap();
            for i in 0..t.rank() {
                for b in 0..c.len() {
                    assert_eq!(table.degree(i, b) as i64, c.root(b)[i].max(0));
                }
            }
            for a in 0..c.len() {
                assert_eq!(table.degree(a, a), 0);
            }
        }
    }

    #[test]
    fn table_invariants() {
        for t in CartanType::all_up_to_rank(6) {
            let c = build_root_system(t).unwrap();
            let table = CompatTable::new(&c).unwrap();
            for a in 0..c.len() {
                for b in 0..c.len() {
                    let d = table.degree(a, b);
                    assert_eq!(d == 0, table.degree(b, a) == 0, "{t}");
                    if t.is_simply_laced() {
                        assert_eq!(d, table.degree(b, a), "{t}");
                    }
                    for eps in [Sign::Plus, Sign::Minus] {
                        let (ta, tb) = (c.tau_index(eps, a), c.tau_index(eps, b));
                        assert_eq!(table.degree(ta, tb), d, "{t}");
                    }
                }
            }
        }
    }

    #[test]
    fn table_matches_direct_degree() {
        let c = cat("F4");
        let table = CompatTable::new(&c).unwrap();
        for a in (0..c.len()).step_by(3) {
            for b in 0..c.len() {
                assert_eq!(table.degree(a, b), compatibility_degree(&c, a, b).unwrap());
            }
        }
    }

    #[test]
    fn subplus_examples() {
        let c = cat("A2");
        let t = CompatTable::new(&c).unwrap();
        let a12 = idx(&c, &[1, 1]);
        assert!(subplus(&c, &t, 0, a12).unwrap().is_zero());

        let a1 = cat("A1");
        let t1 = CompatTable::new(&a1).unwrap();
        assert!(subplus(&a1, &t1, 1, 0).unwrap().is_zero());
        let e = e_set(&a1, &t1, 1, 0).unwrap();
        assert_eq!(e.sum, e.subsum);
    }

    #[test]
    fn subplus_requires_mutual_degree_one() {
        let c = cat("A2");
        let t = CompatTable::new(&c).unwrap();
        let err = subplus(&c, &t, 0, 1).unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));
    }

    #[test]
    fn subplus_of_minus_simple_matches_formula() {
        for t in CartanType::all_up_to_rank(6) {
            let c = build_root_system(t).unwrap();
            let table = CompatTable::new(&c).unwrap();
            for j in 0..t.rank() {
                for b in 0..c.len() {
                    if table.mutual_one(j, b) && t.rank() > 1 {
                        let got = subplus(&c, &table, j, b).unwrap();
                        assert_eq!(got, subplus_minus_simple(&c, j, c.root(b)), "{t}");
                    }
                }
            }
        }
    }

    #[test]
    fn second_term_and_dichotomy_small_ranks() {
        for t in CartanType::all_up_to_rank(4) {
            let c = build_root_system(t).unwrap();
            let table = CompatTable::new(&c).unwrap();
            let second = check_second_term(&c, &table);
            assert!(second.passed(), "{t}: {second}");
            let dich = check_e_set_dichotomy(&c, &table);
            assert!(dich.passed(), "{t}: {dich}");
            assert!(dich.checked > 0);
        }
    }
}
