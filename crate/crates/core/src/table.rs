//! Tables of cluster expansions of `alpha - alpha_j` for full-support
//! positive roots `alpha` and indices `j` with
//! `[alpha : alpha_j] = [alpha^vee : alpha_j^vee] = 1`.
//!
//! Rows are sorted by height of `alpha`, then colexicographically (last
//! coordinate compared first), then by `j`.

use std::cmp::Ordering;

use crate::cartan::{RootCatalog, RootVec};
use crate::clusters::{cluster_expansion, ClusterExpansion};
use crate::error::Result;
use crate::polytope::certificate::qualifying_pairs;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableRow {
    pub alpha: usize,
    pub j: usize,
    pub expansion: ClusterExpansion,
}

fn colex(a: &RootVec, b: &RootVec) -> Ordering {
    a.height()
        .cmp(&b.height())
        .then_with(|| a.coords().iter().rev().cmp(b.coords().iter().rev()))
}

pub fn expansion_table(catalog: &RootCatalog) -> Result<Vec<TableRow>> {
    let mut pairs = qualifying_pairs(catalog);
    pairs.sort_by(|&(a, j), &(b, k)| colex(catalog.root(a), catalog.root(b)).then(j.cmp(&k)));
    pairs
        .into_iter()
        .map(|(alpha, j)| {
            let gamma = catalog.root(alpha) + &RootVec::neg_simple(catalog.rank(), j);
            Ok(TableRow {
                alpha,
                j,
                expansion: cluster_expansion(catalog, &gamma)?,
            })
        })
        .collect()
}

/// One line per row: `alpha | j | expansion`, with `alpha` blanked on rows
/// that repeat it.
pub fn render_table(catalog: &RootCatalog, rows: &[TableRow]) -> String {
    let mut out = String::new();
    let mut prev: Option<usize> = None;
    for row in rows {
        let alpha = catalog.root(row.alpha).bracketed(", ");
        let head = if prev == Some(row.alpha) {
            " ".repeat(alpha.len())
        } else {
            alpha
        };
        prev = Some(row.alpha);
        out.push_str(&format!(
            "{head} | {} | {}\n",
            catalog.simple_label(row.j),
            row.expansion.render_with(catalog, ", ")
        ));
    }
    out
}
