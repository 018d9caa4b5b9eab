//! The piecewise-linear involutions `tau_+`, `tau_-` and the dihedral group
//! they generate.
//!
//! `tau_eps` changes only the coordinates in `I_eps`:
//! `gamma_i -> -gamma_i - sum_{j != i} a_ij max(gamma_j, 0)`.

use std::fmt;

use crate::cartan::{apply_w0, longest_element_word, CartanMatrix, RootCatalog, RootVec, Sign};
use crate::report::{Check, Report};

pub(crate) fn tau_raw(cartan: &CartanMatrix, sign: &[Sign], eps: Sign, gamma: &RootVec) -> RootVec {
    let n = cartan.rank();
    let mut out = gamma.clone();
    for i in 0..n {
        if sign[i] != eps {
            continue;
        }
        let mut v = -gamma[i];
        for j in 0..n {
            if j != i {
                v -= cartan.get(i, j) * gamma[j].max(0);
            }
        }
        out.coords_mut()[i] = v;
    }
    out
}

/// `tau_eps(gamma)` for an arbitrary lattice vector.
pub fn tau_apply(catalog: &RootCatalog, eps: Sign, gamma: &RootVec) -> RootVec {
    tau_raw(catalog.cartan(), catalog.signs(), eps, gamma)
}

/// `tau_eps` restricted to the catalog.
pub fn tau_on_catalog(catalog: &RootCatalog, eps: Sign, idx: usize) -> usize {
    catalog.tau_index(eps, idx)
}

/// An element of the group generated by `tau_+` and `tau_-`, stored as the
/// sequence of factors in the order they are applied (first entry first).
/// Adjacent equal factors cancel, so the stored word always alternates.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct TauWord {
    signs: Vec<Sign>,
}

impl TauWord {
    pub fn identity() -> Self {
        Self::default()
    }

    /// `len` factors alternating, the first one being `start`.
    pub fn alternating(start: Sign, len: usize) -> Self {
        let mut s = start;
        let mut signs = Vec::with_capacity(len);
        for _ in 0..len {
            signs.push(s);
            s = s.flip();
        }
        TauWord { signs }
    }

    pub fn from_signs(signs: &[Sign]) -> Self {
        let mut w = Self::identity();
        for &s in signs {
            w.push(s);
        }
        w
    }

    /// Appends a factor applied after the current ones.
    pub fn push(&mut self, s: Sign) {
        if self.signs.last() == Some(&s) {
            self.signs.pop();
        } else {
            self.signs.push(s);
        }
    }

    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    pub fn len(&self) -> usize {
        self.signs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.signs.is_empty()
    }

    pub fn inverse(&self) -> TauWord {
        TauWord {
            signs: self.signs.iter().rev().copied().collect(),
        }
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &TauWord) -> TauWord {
        let mut w = self.clone();
        for &s in &other.signs {
            w.push(s);
        }
        w
    }

    pub fn apply(&self, catalog: &RootCatalog, gamma: &RootVec) -> RootVec {
        self.signs
            .iter()
            .fold(gamma.clone(), |g, &s| tau_apply(catalog, s, &g))
    }

    pub fn apply_index(&self, catalog: &RootCatalog, idx: usize) -> usize {
        self.signs.iter().fold(idx, |k, &s| catalog.tau_index(s, k))
    }
}

impl fmt::Display for TauWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, s) in self.signs.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", s.symbol())?;
        }
        write!(f, ")")
    }
}

pub fn sigma_apply(catalog: &RootCatalog, w: &TauWord, gamma: &RootVec) -> RootVec {
    w.apply(catalog, gamma)
}

pub fn sigma_inverse(w: &TauWord) -> TauWord {
    w.inverse()
}

/// The orbits of the group generated by `tau_+`, `tau_-` on the catalog.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitPartition {
    /// Each orbit as ascending catalog indices; orbits sorted by their
    /// smallest member, which is always a negative simple root.
    pub orbits: Vec<Vec<usize>>,
    /// Orbit id of each catalog index.
    pub orbit_of: Vec<usize>,
    /// For each orbit, the simple indices `i` with `-alpha_i` in it.
    pub representatives: Vec<Vec<usize>>,
}

impl OrbitPartition {
    pub fn len(&self) -> usize {
        self.orbits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orbits.is_empty()
    }

    /// Orbit id containing `-alpha_i`.
    pub fn orbit_of_simple(&self, i: usize) -> usize {
        self.orbit_of[i]
    }
}

pub fn orbits(catalog: &RootCatalog) -> OrbitPartition {
    let total = catalog.len();
    let mut orbit_of = vec![usize::MAX; total];
    let mut orbits = Vec::new();
    for start in 0..total {
        if orbit_of[start] != usize::MAX {
            continue;
        }
        let id = orbits.len();
        let mut members = vec![start];
        orbit_of[start] = id;
        let mut k = 0;
        while k < members.len() {
            let x = members[k];
            for eps in [Sign::Plus, Sign::Minus] {
                let y = catalog.tau_index(eps, x);
                if orbit_of[y] == usize::MAX {
                    orbit_of[y] = id;
                    members.push(y);
                }
            }
            k += 1;
        }
        members.sort_unstable();
        orbits.push(members);
    }
    let representatives = orbits
        .iter()
        .map(|o| o.iter().filter_map(|&x| catalog.as_neg_simple(x)).collect())
        .collect();
    OrbitPartition {
        orbits,
        orbit_of,
        representatives,
    }
}

/// Checks that both alternating words of length `h+2` act as `-w0` on the
/// catalog, and the positive-root counts of the orbits through `-Pi`.
pub fn check_periodicity(catalog: &RootCatalog) -> Report {
    let n = catalog.rank();
    let h = catalog.coxeter_number();
    let w0 = longest_element_word(catalog);
    let mut report = Report::new();

    let mut word_check = Check::new("tau periodicity: (h+2)-words equal -w0");
    for start in [Sign::Plus, Sign::Minus] {
        let word = TauWord::alternating(start, h + 2);
        for idx in 0..catalog.len() {
            let lhs = catalog.root(word.apply_index(catalog, idx));
            let rhs = -&apply_w0(catalog, &w0, catalog.root(idx));
            word_check.record(lhs == &rhs, || {
                format!(
                    "word {word} sends {} to {lhs}, -w0 gives {rhs}",
                    catalog.root(idx)
                )
            });
        }
    }
    report.push(word_check);

    let parts = orbits(catalog);
    let mut count_check = Check::new("tau periodicity: positive roots per orbit");
    let p = catalog.minus_w0();
    for i in 0..n {
        let orbit = &parts.orbits[parts.orbit_of_simple(i)];
        let positives = orbit.iter().filter(|&&x| x >= n).count();
        let expected = if p[i] != i { h } else { h / 2 };
        let fixed_ok = p[i] != i || h % 2 == 0;
        count_check.record(positives == expected && fixed_ok, || {
            format!(
                "orbit of -alpha_{} has {positives} positive roots, expected {expected}",
                catalog.simple_label(i)
            )
        });
    }
    report.push(count_check);
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::{build_root_system, CartanType};

    fn cat(s: &str) -> RootCatalog {
        build_root_system(s.parse().unwrap()).unwrap()
    }

    fn v(c: &[i64]) -> RootVec {
        RootVec::from_slice(c)
    }

    #[test]
    fn a2_orbit_walk() {
        let c = cat("A2");
        assert_eq!(tau_apply(&c, Sign::Plus, &v(&[-1, 0])), v(&[1, 0]));
        assert_eq!(tau_apply(&c, Sign::Minus, &v(&[1, 0])), v(&[1, 1]));
        assert_eq!(tau_apply(&c, Sign::Plus, &v(&[1, 1])), v(&[0, 1]));
        assert_eq!(tau_apply(&c, Sign::Minus, &v(&[0, 1])), v(&[0, -1]));
    }

    #[test]
    fn tau_fixes_opposite_negative_simples() {
        for t in CartanType::all_up_to_rank(8) {
            let c = build_root_system(t).unwrap();
            for i in 0..t.rank() {
                let eps = c.sign(i).flip();
                assert_eq!(tau_on_catalog(&c, eps, i), i, "{t}");
                let same = c.sign(i);
                assert_eq!(
                    c.root(tau_on_catalog(&c, same, i)),
                    &RootVec::unit(t.rank(), i)
                );
            }
        }
    }

    #[test]
    fn tau_is_involutive_on_catalog() {
        for t in CartanType::all_up_to_rank(8) {
            let c = build_root_system(t).unwrap();
            for eps in [Sign::Plus, Sign::Minus] {
                for idx in 0..c.len() {
                    assert_eq!(c.tau_index(eps, c.tau_index(eps, idx)), idx);
                }
            }
        }
    }

    #[test]
    fn tau_is_a_product_of_reflections_off_minus_pi() {
        for t in CartanType::all_up_to_rank(8) {
            let c = build_root_system(t).unwrap();
            let n = t.rank();
            for eps in [Sign::Plus, Sign::Minus] {
                for idx in n..c.len() {
                    let img = c.root(c.tau_index(eps, idx));
                    // A positive root alpha_i with i in I_eps is sent to -alpha_i.
                    let r = c.root(idx);
                    let support = r.support();
                    if support.len() == 1 && c.sign(support[0]) == eps {
                        assert_eq!(img, &(-r));
                        continue;
                    }
                    let mut want = r.clone();
                    for i in c.part(eps) {
                        want = c.cartan().reflect(i, &want);
                    }
                    assert_eq!(img, &want, "{t} {r}");
                }
            }
        }
    }

    #[test]
    fn words_normalise_and_invert() {
        let w = TauWord::from_signs(&[Sign::Plus, Sign::Minus, Sign::Minus, Sign::Plus]);
        assert!(w.is_empty());
        let w = TauWord::alternating(Sign::Plus, 3);
        assert_eq!(w.to_string(), "(+,-,+)");
        assert!(w.then(&w.inverse()).is_empty());
        let c = cat("D5");
        for idx in 0..c.len() {
            assert_eq!(w.inverse().apply_index(&c, w.apply_index(&c, idx)), idx);
            assert_eq!(
                c.root(w.apply_index(&c, idx)),
                &sigma_apply(&c, &w, c.root(idx))
            );
        }
    }

    #[test]
    fn a2_five_factor_word_is_minus_w0() {
        let c = cat("A2");
        let w = TauWord::alternating(Sign::Plus, 5);
        // -w0 swaps alpha_1 and alpha_2 in type A2.
        for idx in 0..c.len() {
            let r = c.root(idx);
            assert_eq!(c.root(w.apply_index(&c, idx)), &v(&[r[1], r[0]]));
        }
    }

    #[test]
    fn orbit_examples() {
        let sizes = |s: &str| {
            let mut out: Vec<usize> = orbits(&cat(s)).orbits.iter().map(Vec::len).collect();
            out.sort_unstable();
            out
        };
        assert_eq!(sizes("A2"), vec![5]);
        assert_eq!(sizes("A3"), vec![3, 6]);
        assert_eq!(sizes("C3"), vec![4, 4, 4]);
        assert_eq!(sizes("A1"), vec![2]);
    }

    #[test]
    fn orbits_meet_minus_pi_in_w0_orbits() {
        for t in CartanType::all_up_to_rank(8) {
            let c = build_root_system(t).unwrap();
            let parts = orbits(&c);
            let p = c.minus_w0();
            for reps in &parts.representatives {
                assert!(!reps.is_empty(), "{t}");
                assert!(reps.len() <= 2);
                if reps.len() == 2 {
                    assert_eq!(p[reps[0]], reps[1]);
                } else {
                    assert_eq!(p[reps[0]], reps[0]);
                }
            }
        }
    }

    #[test]
    fn periodicity_holds_everywhere() {
        for t in CartanType::all_up_to_rank(8) {
            let c = build_root_system(t).unwrap();
            let r = check_periodicity(&c);
            assert!(r.passed(), "{t}\n{r}");
        }
    }
}
