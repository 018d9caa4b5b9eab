//! Vertices and facet inequalities in the coordinates `z_j = <phi, alpha_j>`.
//!
//! The facet for `alpha` is `sum_j [alpha : alpha_j] z_j <= F(alpha)`; the
//! vertex of a cluster is the point where its members' facets meet.

use num::{BigInt, BigRational, Integer, One, Signed, ToPrimitive, Zero};

use crate::cartan::{RootCatalog, RootVec};
use crate::clusters::Cluster;
use crate::error::{consistency, Result};
use crate::exec;
use crate::linalg::{solve_rational, solve_unimodular};

use super::support::SupportFunction;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Facet {
    pub normal: RootVec,
    pub rhs: BigRational,
}

/// Exact vertices (one per cluster, same order) and facets (catalog order).
///
/// With `scale` the least common denominator of the support values, the
/// scaled right-hand sides and scaled vertices are integers; they are kept
/// alongside for fast exact checks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolytopeRealization {
    pub vertices: Vec<Vec<BigRational>>,
    pub facets: Vec<Facet>,
    pub scale: BigInt,
    pub scaled_rhs: Vec<i128>,
    pub scaled_vertices: Vec<Vec<i128>>,
}

pub fn facets(catalog: &RootCatalog, f: &SupportFunction) -> Vec<Facet> {
    (0..catalog.len())
        .map(|idx| Facet {
            normal: catalog.root(idx).clone(),
            rhs: f.value(idx).clone(),
        })
        .collect()
}

/// Solves `sum_j [beta:alpha_j] z_j = F(beta)` over the members of `cluster`.
pub fn vertex(
    catalog: &RootCatalog,
    cluster: &Cluster,
    f: &SupportFunction,
) -> Result<Vec<BigRational>> {
    let m: Vec<Vec<BigRational>> = cluster
        .members
        .iter()
        .map(|&b| {
            catalog
                .root(b)
                .coords()
                .iter()
                .map(|&x| BigRational::from_integer(BigInt::from(x)))
                .collect()
        })
        .collect();
    let rhs: Vec<BigRational> = cluster
        .members
        .iter()
        .map(|&b| f.value(b).clone())
        .collect();
    solve_rational(&m, &rhs).ok_or_else(|| {
        consistency(format!(
            "cluster {:?} gives a singular system",
            cluster.members
        ))
    })
}

fn common_denominator(values: &[BigRational]) -> BigInt {
    values
        .iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

fn to_i128(x: &BigInt) -> Result<i128> {
    x.to_i128()
        .ok_or_else(|| consistency(format!("{x} does not fit in 128 bits")))
}

/// All vertices and facets.
pub fn realize(
    catalog: &RootCatalog,
    clusters: &[Cluster],
    f: &SupportFunction,
) -> Result<PolytopeRealization> {
    let facets = facets(catalog, f);
    let scale = common_denominator(&f.full);
    let scaled_rhs = f
        .full
        .iter()
        .map(|v| to_i128(&(v.numer() * (&scale / v.denom()))))
        .collect::<Result<Vec<_>>>()?;
    let scale_q = BigRational::from_integer(scale.clone());
    let solved = exec::map(clusters, |c| -> Result<(Vec<i128>, Vec<BigRational>)> {
        let m = c.matrix(catalog);
        let rhs: Vec<i128> = c.members.iter().map(|&b| scaled_rhs[b]).collect();
        match solve_unimodular(&m, &rhs) {
            Some(x) => {
                let z = x
                    .iter()
                    .map(|&v| BigRational::from_integer(BigInt::from(v)) / &scale_q)
                    .collect();
                Ok((x, z))
            }
            None => {
                // Not unimodular: report through the general solver.
                let z = vertex(catalog, c, f)?;
                Err(consistency(format!(
                    "cluster {:?} is not unimodular; vertex {z:?}",
                    c.members
                )))
            }
        }
    });
    let mut scaled_vertices = Vec::with_capacity(clusters.len());
    let mut vertices = Vec::with_capacity(clusters.len());
    for s in solved {
        let (x, z) = s?;
        scaled_vertices.push(x);
        vertices.push(z);
    }
    Ok(PolytopeRealization {
        vertices,
        facets,
        scale,
        scaled_rhs,
        scaled_vertices,
    })
}

impl PolytopeRealization {
    /// `F(alpha) - sum_j [alpha:alpha_j] z_j` scaled by `scale`.
    pub fn scaled_slack(&self, vertex: usize, facet: usize) -> i128 {
        let normal = &self.facets[facet].normal;
        let x = &self.scaled_vertices[vertex];
        let lhs: i128 = normal
            .coords()
            .iter()
            .zip(x)
            .map(|(&a, &b)| a as i128 * b)
            .sum();
        self.scaled_rhs[facet] - lhs
    }

    /// Indices of vertices lying on `facet`.
    pub fn facet_vertices(&self, facet: usize) -> Vec<usize> {
        (0..self.vertices.len())
            .filter(|&v| self.scaled_slack(v, facet) == 0)
            .collect()
    }
}

/// A rational point violating only facet `facet`, showing that the facet
/// cannot be dropped from the inequality system.
///
/// Starts at the centroid of the facet's vertices (strictly inside every other
/// facet) and steps outward along the facet normal by half the smallest
/// distance that would reach another facet.
pub fn minimality_witness(real: &PolytopeRealization, facet: usize) -> Option<Vec<BigRational>> {
    let on = real.facet_vertices(facet);
    if on.is_empty() {
        return None;
    }
    let n = real.facets[facet].normal.len();
    let k = BigRational::from_integer(BigInt::from(on.len()));
    let mut c = vec![BigRational::zero(); n];
    for &v in &on {
        for j in 0..n {
            c[j] += &real.vertices[v][j];
        }
    }
    for x in c.iter_mut() {
        *x /= &k;
    }
    let dir: Vec<BigRational> = real.facets[facet]
        .normal
        .coords()
        .iter()
        .map(|&a| BigRational::from_integer(BigInt::from(a)))
        .collect();
    let dot = |a: &RootVec, b: &[BigRational]| {
        a.coords()
            .iter()
            .zip(b)
            .fold(BigRational::zero(), |acc, (&x, y)| {
                acc + y * BigRational::from_integer(BigInt::from(x))
            })
    };
    let mut step: Option<BigRational> = None;
    for (g, other) in real.facets.iter().enumerate() {
        if g == facet {
            continue;
        }
        let slack = &other.rhs - dot(&other.normal, &c);
        if !slack.is_positive() {
            return None;
        }
        let rate = dot(&other.normal, &dir);
        if rate.is_positive() {
            let t = slack / rate / BigRational::from_integer(BigInt::from(2));
            step = Some(match step {
                Some(s) if s < t => s,
                _ => t,
            });
        }
    }
    let t = step.unwrap_or_else(BigRational::one);
    Some(c.iter().zip(&dir).map(|(x, d)| x + d * &t).collect())
}

/// Facet indices violated by `point`.
pub fn violated(real: &PolytopeRealization, point: &[BigRational]) -> Vec<usize> {
    real.facets
        .iter()
        .enumerate()
        .filter(|(_, f)| {
            let lhs = f
                .normal
                .coords()
                .iter()
                .zip(point)
                .fold(BigRational::zero(), |acc, (&a, z)| {
                    acc + z * BigRational::from_integer(BigInt::from(a))
                });
            lhs > f.rhs
        })
        .map(|(k, _)| k)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::build_root_system;
    use crate::clusters::enumerate_clusters;
    use crate::compat::CompatTable;
    use crate::polytope::support::{build_support_function, rho_support};

    fn q(s: &str) -> BigRational {
        s.parse().unwrap()
    }

    #[test]
    fn a2_constant_support() {
        let c = build_root_system("A2".parse().unwrap()).unwrap();
        let t = CompatTable::new(&c).unwrap();
        let clusters = enumerate_clusters(&c, &t).unwrap();
        let f = build_support_function(&c, &[q("1")]).unwrap();
        let real = realize(&c, &clusters, &f).unwrap();
        assert_eq!(real.facets.len(), 5);
        assert_eq!(real.vertices[0], vec![q("-1"), q("-1")]);
        let a1 = c.index_of(&RootVec::from_slice(&[1, 0])).unwrap();
        let a12 = c.index_of(&RootVec::from_slice(&[1, 1])).unwrap();
        let pos = clusters
            .iter()
            .position(|cl| {
                cl.members == {
                    let mut m = vec![a1, a12];
                    m.sort();
                    m
                }
            })
            .unwrap();
        assert_eq!(real.vertices[pos], vec![q("1"), q("0")]);
    }

    #[test]
    fn minus_pi_vertex_is_minus_f() {
        let c = build_root_system("C3".parse().unwrap()).unwrap();
        let t = CompatTable::new(&c).unwrap();
        let clusters = enumerate_clusters(&c, &t).unwrap();
        let f = rho_support(&c).unwrap();
        let real = realize(&c, &clusters, &f).unwrap();
        assert_eq!(real.vertices[0], vec![q("-5/2"), q("-4"), q("-9/2")]);
        assert_eq!(vertex(&c, &clusters[0], &f).unwrap(), real.vertices[0]);
    }

    #[test]
    fn witnesses_violate_exactly_one_facet() {
        for t in ["A2", "A3", "B3", "C3"] {
            let c = build_root_system(t.parse().unwrap()).unwrap();
            let table = CompatTable::new(&c).unwrap();
            let clusters = enumerate_clusters(&c, &table).unwrap();
            let f = rho_support(&c).unwrap();
            let real = realize(&c, &clusters, &f).unwrap();
            for k in 0..real.facets.len() {
                let p = minimality_witness(&real, k).unwrap();
                assert_eq!(violated(&real, &p), vec![k], "{t}");
            }
        }
    }
}
