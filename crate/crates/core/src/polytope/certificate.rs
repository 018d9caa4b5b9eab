//! Symbolic certificates that the regularity conditions on a support function
//! imply every exchange inequality with one root in `-Pi`.
//!
//! Write `f_1, ..., f_k` for the orbit values (orbits ordered by smallest
//! simple index). The regularity conditions fold into `M f > 0` with `M`
//! square. An exchange inequality `c . f > 0` follows from them whenever
//! `y = M^{-T} c` is nonnegative and nonzero, since then `c . f = y . (M f)`.

use num::{BigInt, BigRational, Signed, Zero};

use crate::cartan::RootCatalog;
use crate::clusters::cluster_expansion;
use crate::error::{consistency, Result};
use crate::exec;
use crate::linalg::{inverse_rational, mat_vec, transpose};
use crate::report::Check;
use crate::tau::orbits;

/// One certified inequality `F(-alpha_j) + F(alpha) - sum m_beta F(beta) > 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertificateRow {
    /// Catalog index of the positive root.
    pub alpha: usize,
    /// Simple index (zero-based).
    pub j: usize,
    /// Orbit coefficients of the inequality.
    pub coefficients: Vec<i64>,
    /// Multipliers of the folded regularity rows.
    pub certificate: Vec<BigRational>,
}

impl CertificateRow {
    pub fn is_valid(&self) -> bool {
        self.certificate.iter().all(|y| !y.is_negative())
            && self.certificate.iter().any(|y| !y.is_zero())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertificateReport {
    /// Folded regularity matrix, row `o` is the condition for the orbit `o`.
    pub folded: Vec<Vec<i64>>,
    pub rows: Vec<CertificateRow>,
    pub check: Check,
}

/// Folds `sum_i a_ij F(-alpha_i) > 0` over orbit variables; rows for `j` and
/// its `-w0` partner must agree.
pub fn fold_regularity(catalog: &RootCatalog) -> Result<Vec<Vec<i64>>> {
    let n = catalog.rank();
    let parts = orbits(catalog);
    let k = parts.len();
    let row = |j: usize| {
        let mut r = vec![0i64; k];
        for i in 0..n {
            r[parts.orbit_of_simple(i)] += catalog.a(i, j);
        }
        r
    };
    let p = catalog.minus_w0();
    for j in 0..n {
        if row(j) != row(p[j]) {
            return Err(consistency(format!(
                "regularity rows {} and {} differ after folding",
                catalog.simple_label(j),
                catalog.simple_label(p[j])
            )));
        }
    }
    Ok(parts
        .representatives
        .iter()
        .map(|reps| row(reps[0]))
        .collect())
}

/// Positive roots `alpha` of full support and `j` with
/// `[alpha : alpha_j] = [alpha^vee : alpha_j^vee] = 1`.
pub fn qualifying_pairs(catalog: &RootCatalog) -> Vec<(usize, usize)> {
    let n = catalog.rank();
    let mut out = Vec::new();
    for idx in n..catalog.len() {
        let r = catalog.root(idx);
        if r.coords().iter().any(|&c| c == 0) {
            continue;
        }
        for j in 0..n {
            if r[j] == 1 && catalog.coroot(idx)[j] == 1 {
                out.push((idx, j));
            }
        }
    }
    out
}

pub fn certificate_check(catalog: &RootCatalog) -> Result<CertificateReport> {
    let parts = orbits(catalog);
    let k = parts.len();
    let folded = fold_regularity(catalog)?;
    let m: Vec<Vec<BigRational>> = folded
        .iter()
        .map(|r| {
            r.iter()
                .map(|&x| BigRational::from_integer(BigInt::from(x)))
                .collect()
        })
        .collect();
    let inv_t = transpose(
        &inverse_rational(&m).ok_or_else(|| consistency("folded regularity matrix is singular"))?,
    );
    let pairs = qualifying_pairs(catalog);
    let rows = exec::map(&pairs, |&(alpha, j)| -> Result<CertificateRow> {
        let gamma = catalog.root(alpha) + &crate::cartan::RootVec::neg_simple(catalog.rank(), j);
        let e = cluster_expansion(catalog, &gamma)?;
        let mut c = vec![0i64; k];
        c[parts.orbit_of[catalog.neg_simple(j)]] += 1;
        c[parts.orbit_of[alpha]] += 1;
        for (&b, &mult) in &e.terms {
            c[parts.orbit_of[b]] -= mult as i64;
        }
        let cq: Vec<BigRational> = c
            .iter()
            .map(|&x| BigRational::from_integer(BigInt::from(x)))
            .collect();
        Ok(CertificateRow {
            alpha,
            j,
            coefficients: c,
            certificate: mat_vec(&inv_t, &cq),
        })
    });
    let rows = rows.into_iter().collect::<Result<Vec<_>>>()?;
    let mut check = Check::new("certificates nonnegative");
    for r in &rows {
        check.record(r.is_valid(), || {
            let y: Vec<String> = r.certificate.iter().map(|v| v.to_string()).collect();
            format!(
                "alpha {} j {}: c = {:?}, certificate ({})",
                catalog.root(r.alpha),
                catalog.simple_label(r.j),
                r.coefficients,
                y.join(", ")
            )
        });
    }
    Ok(CertificateReport {
        folded,
        rows,
        check,
    })
}
