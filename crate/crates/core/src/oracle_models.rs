//! Polygon models for types A, B and C, used as independent oracles.
//!
//! Type `A_n` lives on a regular `(n+3)`-gon: each almost positive root is a
//! diagonal, and the degree is 1 when two diagonals cross. Types `B_n`, `C_n`
//! live on a `(2n+2)`-gon: each root is an orbit of diagonals under the
//! half-turn, and the degree counts crossings. The negative simple roots form
//! a zig-zag "snake"; a positive root is recovered from its crossings with the
//! snake.

use std::collections::{BTreeSet, HashMap};

use crate::cartan::{Family, RootCatalog, RootVec};
use crate::compat::CompatTable;
use crate::error::{consistency, Error, Result};
use crate::report::Check;
use crate::tau::orbits;

/// A diagonal `(a, b)` with `1 <= a < b <= N`.
pub type Diagonal = (usize, usize);

fn normalise(a: usize, b: usize) -> Diagonal {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Distinct diagonals meeting in the interior of the polygon. A shared
/// endpoint is not a crossing.
pub fn crosses(d1: Diagonal, d2: Diagonal) -> bool {
    let (a, b) = d1;
    let (c, d) = d2;
    if d1 == d2 || a == c || a == d || b == c || b == d {
        return false;
    }
    let inside = |x: usize| a < x && x < b;
    inside(c) != inside(d)
}

/// All diagonals of the `n_vertices`-gon.
pub fn diagonals(n_vertices: usize) -> Vec<Diagonal> {
    let mut out = Vec::new();
    for a in 1..=n_vertices {
        for b in a + 2..=n_vertices {
            if !(a == 1 && b == n_vertices) {
                out.push((a, b));
            }
        }
    }
    out
}

/// The zig-zag `d_{2m-1} = (m, N-m)`, `d_{2m} = (N-m, m+1)` with `len` terms.
pub fn snake(len: usize, n_vertices: usize) -> Vec<Diagonal> {
    (1..=len)
        .map(|k| {
            let m = k.div_ceil(2);
            if k % 2 == 1 {
                normalise(m, n_vertices - m)
            } else {
                normalise(n_vertices - m, m + 1)
            }
        })
        .collect()
}

/// Crossings of the first diagonal of `of` by the diagonals of `by`.
fn crossings(of: &[Diagonal], by: &[Diagonal]) -> u32 {
    by.iter().filter(|&&d| crosses(of[0], d)).count() as u32
}

pub fn crossing_degree_a(d1: Diagonal, d2: Diagonal) -> u32 {
    u32::from(crosses(d1, d2))
}

/// `(alpha || beta)`: in type B the crossings of one diagonal of `alpha` by
/// the diagonals of `beta`; in type C the crossings of one diagonal of `beta`
/// by the diagonals of `alpha`.
pub fn crossing_degree_bc(family: Family, alpha: &[Diagonal], beta: &[Diagonal]) -> u32 {
    match family {
        Family::C => crossings(beta, alpha),
        _ => crossings(alpha, beta),
    }
}

/// Polygon model with each catalog index mapped to its diagonals.
#[derive(Debug, Clone)]
pub struct PolygonModel {
    pub family: Family,
    pub rank: usize,
    pub n_vertices: usize,
    /// Diagonals of each catalog index (one, or a half-turn pair).
    pub elements: Vec<Vec<Diagonal>>,
}

impl PolygonModel {
    pub fn degree(&self, a: usize, b: usize) -> u32 {
        match self.family {
            Family::A => crossing_degree_a(self.elements[a][0], self.elements[b][0]),
            f => crossing_degree_bc(f, &self.elements[a], &self.elements[b]),
        }
    }

    pub fn compatible(&self, a: usize, b: usize) -> bool {
        self.degree(a, b) == 0
    }

    fn half_turn(&self, d: Diagonal) -> Diagonal {
        let n = self.n_vertices;
        let h = n / 2;
        let t = |v: usize| (v - 1 + h) % n + 1;
        normalise(t(d.0), t(d.1))
    }

    fn rotate(&self, d: Diagonal) -> Diagonal {
        let n = self.n_vertices;
        normalise(d.0 % n + 1, d.1 % n + 1)
    }

    /// Number of maximal pairwise compatible sets of elements, by plain
    /// include/exclude search.
    pub fn count_maximal_noncrossing(&self) -> u64 {
        let size = self.elements.len();
        let compat: Vec<Vec<bool>> = (0..size)
            .map(|a| (0..size).map(|b| self.compatible(a, b)).collect())
            .collect();
        fn go(k: usize, chosen: &mut Vec<usize>, compat: &[Vec<bool>]) -> u64 {
            let size = compat.len();
            if k == size {
                let maximal =
                    (0..size).all(|x| chosen.contains(&x) || chosen.iter().any(|&c| !compat[x][c]));
                return u64::from(maximal);
            }
            let mut total = 0;
            if chosen.iter().all(|&c| compat[k][c]) {
                chosen.push(k);
                total += go(k + 1, chosen, compat);
                chosen.pop();
            }
            // Excluding k only leads to maximal sets if something chosen or
            // still to come conflicts with it.
            let blocked_now = chosen.iter().any(|&c| !compat[k][c]);
            let blockable_later = (k + 1..size).any(|x| !compat[k][x]);
            if blocked_now || blockable_later {
                total += go(k + 1, chosen, compat);
            }
            total
        }
        go(0, &mut Vec::new(), &compat)
    }
}

/// Builds the model for a type A, B or C catalog. The root of a non-snake
/// element is read off from its degrees against the snake, which must
/// reproduce `(-alpha_i || alpha) = [alpha : alpha_i]`.
pub fn build_model(catalog: &RootCatalog) -> Result<PolygonModel> {
    let n = catalog.rank();
    let family = catalog.cartan_type().family();
    let (n_vertices, snake_orbits): (usize, Vec<Vec<Diagonal>>) = match family {
        Family::A => {
            let nv = n + 3;
            (nv, snake(n, nv).into_iter().map(|d| vec![d]).collect())
        }
        Family::B | Family::C => {
            let nv = 2 * n + 2;
            let s = snake(2 * n - 1, nv);
            let orbits = (1..=n)
                .map(|i| {
                    if i < n {
                        vec![s[i - 1], s[2 * n - i - 1]]
                    } else {
                        vec![s[n - 1]]
                    }
                })
                .collect();
            (nv, orbits)
        }
        _ => {
            return Err(Error::Precondition(format!(
                "no polygon model for type {}",
                catalog.cartan_type()
            )))
        }
    };
    let mut model = PolygonModel {
        family,
        rank: n,
        n_vertices,
        elements: vec![Vec::new(); catalog.len()],
    };
    let snake_set: BTreeSet<Diagonal> = snake_orbits.iter().flatten().copied().collect();
    let mut groups: Vec<Vec<Diagonal>> = Vec::new();
    let mut seen: BTreeSet<Diagonal> = BTreeSet::new();
    for d in diagonals(n_vertices) {
        if snake_set.contains(&d) || seen.contains(&d) {
            continue;
        }
        let mut g = vec![d];
        if family != Family::A {
            let t = model.half_turn(d);
            if t != d {
                g.push(t);
            }
        }
        seen.extend(g.iter().copied());
        groups.push(g);
    }
    for (i, o) in snake_orbits.iter().enumerate() {
        if family != Family::A && !o.iter().all(|&d| o.contains(&model.half_turn(d))) {
            return Err(consistency("snake orbit is not half-turn stable"));
        }
        model.elements[catalog.neg_simple(i)] = o.clone();
    }
    let degree = |a: &[Diagonal], b: &[Diagonal]| match family {
        Family::A => crossing_degree_a(a[0], b[0]),
        f => crossing_degree_bc(f, a, b),
    };
    for g in groups {
        let coords: Vec<i64> = snake_orbits.iter().map(|s| degree(s, &g) as i64).collect();
        let root = RootVec::from_slice(&coords);
        let idx = catalog.index_of(&root).filter(|&k| k >= n).ok_or_else(|| {
            consistency(format!("diagonals {g:?} give {root}, not a positive root"))
        })?;
        if !model.elements[idx].is_empty() {
            return Err(consistency(format!("two diagonal groups give {root}")));
        }
        model.elements[idx] = g;
    }
    if model.elements.iter().any(Vec::is_empty) {
        return Err(consistency("polygon model misses some roots"));
    }
    Ok(model)
}

/// Model degrees equal algebraic degrees on every ordered pair.
pub fn compare_degrees(catalog: &RootCatalog, model: &PolygonModel, table: &CompatTable) -> Check {
    let mut check = Check::new(format!("{} polygon degrees", catalog.cartan_type()));
    for a in 0..catalog.len() {
        for b in 0..catalog.len() {
            let (m, t) = (model.degree(a, b), table.degree(a, b));
            check.record(m == t, || {
                format!(
                    "({} || {}): model {m}, algebra {t}",
                    catalog.root(a),
                    catalog.root(b)
                )
            });
        }
    }
    check
}

/// Each `tau`-orbit is one orbit of the rotation group acting on diagonals.
pub fn compare_orbits(catalog: &RootCatalog, model: &PolygonModel) -> Check {
    let mut check = Check::new(format!(
        "{} tau orbits are rotation orbits",
        catalog.cartan_type()
    ));
    let of: HashMap<Diagonal, usize> = model
        .elements
        .iter()
        .enumerate()
        .flat_map(|(k, ds)| ds.iter().map(move |&d| (d, k)))
        .collect();
    let parts = orbits(catalog);
    for members in &parts.orbits {
        let start = model.elements[members[0]][0];
        let mut geo: BTreeSet<usize> = BTreeSet::new();
        let mut d = start;
        for _ in 0..model.n_vertices {
            geo.insert(of[&d]);
            d = model.rotate(d);
        }
        let want: BTreeSet<usize> = members.iter().copied().collect();
        check.record(geo == want, || {
            format!("tau-orbit {:?} vs rotation orbit {:?}", want, geo)
        });
    }
    check
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::build_root_system;

    fn cat(s: &str) -> RootCatalog {
        build_root_system(s.parse().unwrap()).unwrap()
    }

    #[test]
    fn shared_endpoint_is_not_a_crossing() {
        assert!(!crosses((1, 3), (3, 5)));
        assert!(crosses((1, 3), (2, 4)));
        assert!(!crosses((1, 4), (1, 4)));
        assert!(!crosses((1, 3), (4, 6)));
    }

    #[test]
    fn snake_shape() {
        assert_eq!(snake(2, 5), vec![(1, 4), (2, 4)]);
        assert_eq!(snake(5, 8).len(), 5);
        // no two snake diagonals cross
        let s = snake(5, 10);
        for &a in &s {
            for &b in &s {
                assert!(!crosses(a, b));
            }
        }
    }

    #[test]
    fn a2_is_bijective() {
        let m = build_model(&cat("A2")).unwrap();
        assert_eq!(m.elements.len(), 5);
        let all: BTreeSet<Diagonal> = m.elements.iter().map(|e| e[0]).collect();
        assert_eq!(all.len(), 5);
        assert_eq!(all, diagonals(5).into_iter().collect());
    }

    #[test]
    fn counts() {
        assert_eq!(
            build_model(&cat("A2")).unwrap().count_maximal_noncrossing(),
            5
        );
        assert_eq!(
            build_model(&cat("A3")).unwrap().count_maximal_noncrossing(),
            14
        );
        assert_eq!(
            build_model(&cat("C3")).unwrap().count_maximal_noncrossing(),
            20
        );
    }

    #[test]
    fn small_degree_tables_agree() {
        for t in ["A3", "B3", "C3"] {
            let c = cat(t);
            let m = build_model(&c).unwrap();
            let table = CompatTable::new(&c).unwrap();
            let check = compare_degrees(&c, &m, &table);
            assert!(check.passed(), "{check}");
            let o = compare_orbits(&c, &m);
            assert!(o.passed(), "{o}");
        }
    }

    #[test]
    fn other_types_have_no_model() {
        assert!(build_model(&cat("D4")).is_err());
    }
}
