//! Clusters, cluster expansions and the exchange graph.

use std::collections::{BTreeMap, HashMap};

use num::{BigInt, Signed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cartan::{RootCatalog, RootVec, Sign};
use crate::compat::CompatTable;
use crate::error::{consistency, Result};
use crate::exec;
use crate::linalg::int_det;
use crate::report::{Check, Report};
use crate::tau::tau_apply;

/// Fixed-width bitset over catalog indices.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn empty(size: usize) -> Self {
        Bits(vec![0; size.div_ceil(64)])
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn and(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn and_not(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a & !b).collect())
    }

    fn or(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a | b).collect())
    }

    fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    fn count(&self) -> u32 {
        self.0.iter().map(|w| w.count_ones()).sum()
    }

    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(k * 64 + b)
            })
        })
    }
}

/// A maximal set of pairwise compatible roots, as ascending catalog indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cluster {
    pub members: Vec<usize>,
}

impl Cluster {
    pub fn contains(&self, idx: usize) -> bool {
        self.members.binary_search(&idx).is_ok()
    }

    /// Coordinate matrix, one row per member.
    pub fn matrix(&self, catalog: &RootCatalog) -> Vec<Vec<i64>> {
        self.members
            .iter()
            .map(|&m| catalog.root(m).coords().to_vec())
            .collect()
    }
}

fn neighbourhoods(table: &CompatTable) -> Vec<Bits> {
    let size = table.len();
    (0..size)
        .map(|a| {
            let mut b = Bits::empty(size);
            for c in 0..size {
                if c != a && table.compatible(a, c) {
                    b.set(c);
                }
            }
            b
        })
        .collect()
}

/// Bron-Kerbosch with pivoting; appends maximal cliques extending `r`.
fn bron_kerbosch(
    nbr: &[Bits],
    r: &mut Vec<usize>,
    p: Bits,
    mut x: Bits,
    out: &mut Vec<Vec<usize>>,
) {
    if p.is_empty() {
        if x.is_empty() {
            out.push(r.clone());
        }
        return;
    }
    let union = p.or(&x);
    let pivot = union
        .iter()
        .max_by_key(|&u| p.and(&nbr[u]).count())
        .expect("p non-empty");
    let mut p = p;
    let candidates: Vec<usize> = p.and_not(&nbr[pivot]).iter().collect();
    for v in candidates {
        r.push(v);
        bron_kerbosch(nbr, r, p.and(&nbr[v]), x.and(&nbr[v]), out);
        r.pop();
        p.0[v / 64] &= !(1 << (v % 64));
        x.set(v);
    }
}

/// All clusters, sorted. Fails if some maximal compatible set has the wrong
/// size or is not a basis of the root lattice.
pub fn enumerate_clusters(catalog: &RootCatalog, table: &CompatTable) -> Result<Vec<Cluster>> {
    let size = catalog.len();
    let n = catalog.rank();
    let nbr = neighbourhoods(table);
    let batches = exec::map_range(size, |v| {
        let mut p = Bits::empty(size);
        let mut x = Bits::empty(size);
        for u in nbr[v].iter() {
            if u > v {
                p.set(u);
            } else {
                x.set(u);
            }
        }
        let mut out = Vec::new();
        bron_kerbosch(&nbr, &mut vec![v], p, x, &mut out);
        out.into_iter()
            .map(|mut members| {
                members.sort_unstable();
                let cluster = Cluster { members };
                if cluster.members.len() != n {
                    return Err(consistency(format!(
                        "{}: maximal compatible set of size {} (expected {n}): {:?}",
                        catalog.cartan_type(),
                        cluster.members.len(),
                        cluster.members
                    )));
                }
                let det = int_det(&cluster.matrix(catalog));
                if det.abs() != BigInt::from(1) {
                    return Err(consistency(format!(
                        "{}: cluster {:?} has determinant {det}",
                        catalog.cartan_type(),
                        cluster.members
                    )));
                }
                Ok(cluster)
            })
            .collect::<Result<Vec<_>>>()
    });
    let mut clusters = Vec::new();
    for b in batches {
        clusters.extend(b?);
    }
    clusters.sort_unstable();
    Ok(clusters)
}

/// A nonnegative integer combination of pairwise compatible roots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClusterExpansion {
    /// Coefficient of each root in the support.
    pub terms: BTreeMap<usize, u64>,
    /// Support in the order the recursion produces it.
    pub order: Vec<usize>,
    /// Number of `tau` steps taken.
    pub depth: usize,
}

impl ClusterExpansion {
    fn empty() -> Self {
        ClusterExpansion {
            terms: BTreeMap::new(),
            order: Vec::new(),
            depth: 0,
        }
    }

    fn add(&mut self, idx: usize, m: u64) {
        let e = self.terms.entry(idx).or_insert(0);
        if *e == 0 {
            self.order.push(idx);
        }
        *e += m;
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn reconstruct(&self, catalog: &RootCatalog) -> RootVec {
        let mut v = RootVec::zero(catalog.rank());
        for (&idx, &m) in &self.terms {
            v.add_scaled(catalog.root(idx), m as i64);
        }
        v
    }

    pub fn support_compatible(&self, table: &CompatTable) -> bool {
        let s: Vec<usize> = self.terms.keys().copied().collect();
        s.iter().all(|&a| s.iter().all(|&b| table.compatible(a, b)))
    }

    /// Terms in recursion order as `[b1,...,bn]`, with the coefficient in
    /// front when it is not 1, joined by ` + `.
    pub fn render(&self, catalog: &RootCatalog) -> String {
        self.render_with(catalog, ",")
    }

    /// Like [`render`](Self::render) with `sep` between coordinates.
    pub fn render_with(&self, catalog: &RootCatalog, sep: &str) -> String {
        let parts: Vec<String> = self
            .order
            .iter()
            .map(|&idx| {
                let m = self.terms[&idx];
                let r = catalog.root(idx).bracketed(sep);
                if m == 1 {
                    r
                } else {
                    format!("{m}{r}")
                }
            })
            .collect();
        parts.join(" + ")
    }
}

/// Cluster expansion of a lattice vector.
///
/// The negative coordinates contribute multiples of `-alpha_i`; the positive
/// part is pushed through `tau_eps`, expanded with the opposite sign and
/// pulled back. Signs alternate starting with `+`.
pub fn cluster_expansion(catalog: &RootCatalog, gamma: &RootVec) -> Result<ClusterExpansion> {
    if gamma.len() != catalog.rank() {
        return Err(crate::error::Error::Arity {
            expected: catalog.rank(),
            got: gamma.len(),
        });
    }
    let guard = catalog.coxeter_number() + 2;
    expand(catalog, gamma, Sign::Plus, 0, guard)
}

fn expand(
    catalog: &RootCatalog,
    gamma: &RootVec,
    eps: Sign,
    level: usize,
    guard: usize,
) -> Result<ClusterExpansion> {
    let mut out = ClusterExpansion::empty();
    out.depth = level;
    for i in 0..catalog.rank() {
        if gamma[i] < 0 {
            out.add(catalog.neg_simple(i), (-gamma[i]) as u64);
        }
    }
    let pos = gamma.positive_part();
    if pos.is_zero() {
        return Ok(out);
    }
    if level >= guard {
        return Err(consistency(format!(
            "expansion recursion exceeded depth {guard} at {gamma}"
        )));
    }
    let inner = expand(
        catalog,
        &tau_apply(catalog, eps, &pos),
        eps.flip(),
        level + 1,
        guard,
    )?;
    for &idx in &inner.order {
        out.add(catalog.tau_index(eps, idx), inner.terms[&idx]);
    }
    out.depth = inner.depth;
    Ok(out)
}

/// Two adjacent clusters and the dependence between the exchanged roots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExchangePair {
    /// Positions in the cluster list, `c1 < c2`.
    pub c1: usize,
    pub c2: usize,
    /// The root of `c1` not in `c2`, and vice versa.
    pub alpha: usize,
    pub alpha_prime: usize,
    /// Cluster expansion of `alpha + alpha'`.
    pub expansion: ClusterExpansion,
}

/// All pairs of clusters sharing `n-1` roots, sorted by `(c1, c2)`, each
/// checked for mutual degree 1 and an expansion inside the common face.
pub fn exchange_pairs(
    catalog: &RootCatalog,
    table: &CompatTable,
    clusters: &[Cluster],
) -> Result<Vec<ExchangePair>> {
    let mut faces: HashMap<Vec<usize>, Vec<(usize, usize)>> = HashMap::new();
    for (ci, c) in clusters.iter().enumerate() {
        for (k, &m) in c.members.iter().enumerate() {
            let mut face = c.members.clone();
            face.remove(k);
            faces.entry(face).or_default().push((ci, m));
        }
    }
    let mut raw = Vec::with_capacity(faces.len());
    for (face, owners) in faces {
        if owners.len() != 2 {
            return Err(consistency(format!(
                "{}: face {face:?} lies in {} clusters, expected 2",
                catalog.cartan_type(),
                owners.len()
            )));
        }
        let (a, b) = if owners[0].0 < owners[1].0 {
            (owners[0], owners[1])
        } else {
            (owners[1], owners[0])
        };
        raw.push((a.0, b.0, a.1, b.1, face));
    }
    raw.sort_unstable();
    let pairs = exec::map(&raw, |(c1, c2, alpha, alpha_prime, face)| {
        let (c1, c2, alpha, alpha_prime) = (*c1, *c2, *alpha, *alpha_prime);
        if !table.mutual_one(alpha, alpha_prime) {
            return Err(consistency(format!(
                "exchange {} <-> {} has degrees ({}, {})",
                catalog.root(alpha),
                catalog.root(alpha_prime),
                table.degree(alpha, alpha_prime),
                table.degree(alpha_prime, alpha)
            )));
        }
        let sum = catalog.root(alpha) + catalog.root(alpha_prime);
        let expansion = cluster_expansion(catalog, &sum)?;
        if expansion.reconstruct(catalog) != sum {
            return Err(consistency(format!(
                "expansion of {sum} does not reconstruct it"
            )));
        }
        if let Some(bad) = expansion
            .terms
            .keys()
            .find(|k| face.binary_search(k).is_err())
        {
            return Err(consistency(format!(
                "expansion of {sum} uses {} outside the common face",
                catalog.root(*bad)
            )));
        }
        Ok(ExchangePair {
            c1,
            c2,
            alpha,
            alpha_prime,
            expansion,
        })
    });
    pairs.into_iter().collect()
}

/// Which lattice vectors [`expansion_uniqueness_check`] visits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sample {
    /// Every vector with coordinates in `[-radius, radius]`.
    Box { radius: i64 },
    /// `count` vectors with coordinates uniform in `[-radius, radius]`.
    Random {
        seed: u64,
        count: usize,
        radius: i64,
    },
}

impl Sample {
    /// Exhaustive `[-2,2]^n` up to rank 4, seeded random sample beyond.
    pub fn default_for(catalog: &RootCatalog, seed: u64) -> Sample {
        if catalog.rank() <= 4 {
            Sample::Box { radius: 2 }
        } else {
            Sample::Random {
                seed,
                count: 2000,
                radius: 2,
            }
        }
    }

    pub fn vectors(&self, n: usize) -> Vec<RootVec> {
        match *self {
            Sample::Box { radius } => {
                let side = (2 * radius + 1) as usize;
                let total = side.pow(n as u32);
                (0..total)
                    .map(|mut k| {
                        let mut v = RootVec::zero(n);
                        for i in 0..n {
                            v.coords_mut()[i] = (k % side) as i64 - radius;
                            k /= side;
                        }
                        v
                    })
                    .collect()
            }
            Sample::Random {
                seed,
                count,
                radius,
            } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                (0..count)
                    .map(|_| {
                        let coords: Vec<i64> =
                            (0..n).map(|_| rng.gen_range(-radius..=radius)).collect();
                        RootVec::from_slice(&coords)
                    })
                    .collect()
            }
        }
    }
}

/// Expansions of sampled vectors reconstruct their input, have compatible
/// support lying in an enumerated cluster, and need at most `h` steps.
pub fn expansion_uniqueness_check(
    catalog: &RootCatalog,
    table: &CompatTable,
    clusters: &[Cluster],
    sample: Sample,
) -> Report {
    let mut by_root: Vec<Vec<usize>> = vec![Vec::new(); catalog.len()];
    for (ci, c) in clusters.iter().enumerate() {
        for &m in &c.members {
            by_root[m].push(ci);
        }
    }
    let h = catalog.coxeter_number();
    let vectors = sample.vectors(catalog.rank());
    let parts = exec::map(&vectors, |gamma| {
        let mut recon = Check::new("expansion reconstructs input");
        let mut compat = Check::new("expansion support compatible");
        let mut inside = Check::new("expansion support inside a cluster");
        let mut depth = Check::new("expansion depth at most h");
        match cluster_expansion(catalog, gamma) {
            Ok(e) => {
                recon.record(e.reconstruct(catalog) == *gamma, || format!("{gamma}"));
                compat.record(e.support_compatible(table), || format!("{gamma}"));
                let found = match e.terms.keys().next() {
                    None => true,
                    Some(&first) => by_root[first]
                        .iter()
                        .any(|&ci| e.terms.keys().all(|&k| clusters[ci].contains(k))),
                };
                inside.record(found, || format!("{gamma}"));
                depth.record(e.depth <= h, || format!("{gamma}: depth {}", e.depth));
            }
            Err(err) => recon.fail(format!("{gamma}: {err}")),
        }
        [recon, compat, inside, depth]
    });
    let mut totals = [
        Check::new("expansion reconstructs input"),
        Check::new("expansion support compatible"),
        Check::new("expansion support inside a cluster"),
        Check::new("expansion depth at most h"),
    ];
    for p in parts {
        for (t, c) in totals.iter_mut().zip(p) {
            t.merge(c);
        }
    }
    let mut report = Report::new();
    for t in totals {
        report.push(t);
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::{build_root_system, CartanType};

    fn setup(s: &str) -> (RootCatalog, CompatTable) {
        let c = build_root_system(s.parse().unwrap()).unwrap();
        let t = CompatTable::new(&c).unwrap();
        (c, t)
    }

    fn v(c: &[i64]) -> RootVec {
        RootVec::from_slice(c)
    }

    #[test]
    fn bits_iterate_in_order() {
        let mut b = Bits::empty(130);
        for i in [0, 5, 63, 64, 129] {
            b.set(i);
        }
        assert_eq!(b.iter().collect::<Vec<_>>(), vec![0, 5, 63, 64, 129]);
        assert_eq!(b.count(), 5);
    }

    #[test]
    fn cluster_counts() {
        for (t, count) in [
            ("A1", 2),
            ("A2", 5),
            ("A3", 14),
            ("C3", 20),
            ("B3", 20),
            ("D4", 50),
            ("G2", 8),
            ("F4", 105),
        ] {
            let (c, table) = setup(t);
            assert_eq!(enumerate_clusters(&c, &table).unwrap().len(), count, "{t}");
        }
    }

    #[test]
    fn minus_pi_is_a_cluster() {
        let (c, table) = setup("D5");
        let clusters = enumerate_clusters(&c, &table).unwrap();
        let neg: Vec<usize> = (0..5).collect();
        assert_eq!(clusters.iter().filter(|cl| cl.members == neg).count(), 1);
        assert_eq!(clusters[0].members, neg);
    }

    #[test]
    fn expansion_examples() {
        let (c, _) = setup("A2");
        let e = cluster_expansion(&c, &v(&[-1, 0])).unwrap();
        assert_eq!(e.terms, BTreeMap::from([(0, 1)]));
        assert!(cluster_expansion(&c, &v(&[0, 0])).unwrap().is_empty());
        let e = cluster_expansion(&c, &v(&[1, 2])).unwrap();
        let a12 = c.index_of(&v(&[1, 1])).unwrap();
        let a2 = c.index_of(&v(&[0, 1])).unwrap();
        assert_eq!(e.terms, BTreeMap::from([(a2, 1), (a12, 1)]));
    }

    #[test]
    fn e6_rows() {
        let (c, _) = setup("E6");
        let e = cluster_expansion(&c, &v(&[1, 1, 1, 0, 1, 1])).unwrap();
        assert_eq!(
            e.render(&c),
            "[0,0,0,0,1,1] + [1,0,1,0,0,0] + [0,1,0,0,0,0]"
        );
        let e = cluster_expansion(&c, &v(&[1, 1, 0, 2, 2, 1])).unwrap();
        assert_eq!(
            e.render(&c),
            "[1,0,0,0,0,0] + [0,0,0,1,1,0] + [0,1,0,1,1,1]"
        );
    }

    #[test]
    fn arity_is_checked() {
        let (c, _) = setup("A2");
        assert!(cluster_expansion(&c, &v(&[1, 2, 3])).is_err());
    }

    #[test]
    fn a2_exchange_pairs() {
        let (c, table) = setup("A2");
        let clusters = enumerate_clusters(&c, &table).unwrap();
        let pairs = exchange_pairs(&c, &table, &clusters).unwrap();
        assert_eq!(pairs.len(), 5);
        let a1 = c.index_of(&v(&[1, 0])).unwrap();
        let a2 = c.index_of(&v(&[0, 1])).unwrap();
        let a12 = c.index_of(&v(&[1, 1])).unwrap();
        let zero = pairs
            .iter()
            .find(|p| (p.alpha, p.alpha_prime) == (0, a1) || (p.alpha, p.alpha_prime) == (a1, 0))
            .unwrap();
        assert!(zero.expansion.is_empty());
        let top = pairs
            .iter()
            .find(|p| {
                [p.alpha, p.alpha_prime].contains(&a1) && [p.alpha, p.alpha_prime].contains(&a2)
            })
            .unwrap();
        assert_eq!(top.expansion.terms, BTreeMap::from([(a12, 1)]));
    }

    #[test]
    fn each_cluster_has_n_neighbours() {
        for t in ["A3", "C3", "B4", "D4", "G2"] {
            let (c, table) = setup(t);
            let clusters = enumerate_clusters(&c, &table).unwrap();
            let pairs = exchange_pairs(&c, &table, &clusters).unwrap();
            assert_eq!(pairs.len() * 2, clusters.len() * c.rank(), "{t}");
        }
    }

    #[test]
    fn uniqueness_box_small_types() {
        for t in CartanType::all_up_to_rank(3) {
            let c = build_root_system(t).unwrap();
            let table = CompatTable::new(&c).unwrap();
            let clusters = enumerate_clusters(&c, &table).unwrap();
            let r = expansion_uniqueness_check(&c, &table, &clusters, Sample::Box { radius: 2 });
            assert!(r.passed(), "{t}\n{r}");
        }
    }

    #[test]
    fn random_sample_is_seeded() {
        let s = Sample::Random {
            seed: 7,
            count: 10,
            radius: 2,
        };
        assert_eq!(s.vectors(6), s.vectors(6));
        assert_eq!(Sample::Box { radius: 1 }.vectors(2).len(), 9);
    }
}
