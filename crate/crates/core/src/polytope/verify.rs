//! Exact checks that a realization is a simple polytope whose normal fan is
//! the cluster fan.

use num::{BigRational, Signed};

use crate::cartan::RootCatalog;
use crate::clusters::{Cluster, ExchangePair};
use crate::exec;
use crate::report::{Check, Report};

use super::realize::{minimality_witness, violated, PolytopeRealization};
use super::support::SupportFunction;

/// `F(alpha) + F(alpha') - sum_beta m_beta F(beta)` for an exchange pair.
pub fn exchange_gap(f: &SupportFunction, pair: &ExchangePair) -> BigRational {
    let mut gap = f.value(pair.alpha) + f.value(pair.alpha_prime);
    for (&b, &m) in &pair.expansion.terms {
        gap -= f.value(b) * BigRational::from_integer(m.into());
    }
    gap
}

/// Simplicity, exchange convexity and vertex distinctness.
pub fn verify_realization(
    catalog: &RootCatalog,
    f: &SupportFunction,
    clusters: &[Cluster],
    pairs: &[ExchangePair],
    real: &PolytopeRealization,
) -> Report {
    let mut report = Report::new();

    let parts = exec::map_range(clusters.len(), |v| {
        let mut check = Check::new("vertices simple");
        let cluster = &clusters[v];
        for k in 0..real.facets.len() {
            let slack = real.scaled_slack(v, k);
            let tight = cluster.contains(k);
            let ok = if tight { slack == 0 } else { slack > 0 };
            check.record(ok, || {
                format!(
                    "vertex of {:?} has slack {}/{} on facet {}",
                    cluster.members,
                    slack,
                    real.scale,
                    catalog.root(k)
                )
            });
        }
        check
    });
    let mut simple = Check::new("vertices simple");
    for p in parts {
        simple.merge(p);
    }
    report.push(simple);

    let gaps = exec::map(pairs, |p| exchange_gap(f, p));
    let mut convex = Check::new("exchange inequalities strict");
    for (p, gap) in pairs.iter().zip(gaps) {
        convex.record(gap.is_positive(), || {
            format!(
                "{} <-> {}: gap {gap}",
                catalog.root(p.alpha),
                catalog.root(p.alpha_prime)
            )
        });
    }
    report.push(convex);

    let mut order: Vec<usize> = (0..real.scaled_vertices.len()).collect();
    order.sort_by(|&a, &b| real.scaled_vertices[a].cmp(&real.scaled_vertices[b]));
    let mut distinct = Check::new("vertices distinct");
    for w in order.windows(2) {
        distinct.record(
            real.scaled_vertices[w[0]] != real.scaled_vertices[w[1]],
            || {
                format!(
                    "clusters {:?} and {:?} share a vertex",
                    clusters[w[0]].members, clusters[w[1]].members
                )
            },
        );
    }
    if order.len() == 1 {
        distinct.checked += 1;
    }
    report.push(distinct);
    report
}

/// Every facet inequality is needed: some rational point violates it alone.
pub fn verify_minimality(catalog: &RootCatalog, real: &PolytopeRealization) -> Check {
    let witnesses = exec::map_range(real.facets.len(), |k| minimality_witness(real, k));
    let mut check = Check::new("facet system minimal");
    for (k, w) in witnesses.into_iter().enumerate() {
        let ok = match w {
            Some(p) => violated(real, &p) == vec![k],
            None => false,
        };
        check.record(ok, || {
            format!("facet {} is redundant or degenerate", catalog.root(k))
        });
    }
    check
}
