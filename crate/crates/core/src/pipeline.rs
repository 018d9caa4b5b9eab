//! End-to-end construction and the verification sweep for one type.

use num::BigRational;

use crate::cartan::{build_root_system, CartanType, Family, RootCatalog};
use crate::clusters::{
    enumerate_clusters, exchange_pairs, expansion_uniqueness_check, Cluster, ExchangePair, Sample,
};
use crate::compat::{check_e_set_dichotomy, check_second_term, CompatTable};
use crate::error::Result;
use crate::oracle_models;
use crate::polytope::{
    build_support_function, certificate_check, realize, rho_support, verify_minimality,
    verify_realization, PolytopeRealization, SupportFunction,
};
use crate::report::{Check, Report};
use crate::tau::check_periodicity;

/// Seed for sampled expansion checks when none is given.
pub const DEFAULT_SEED: u64 = 0x5eed;

/// Rank up to which the facet-minimality witnesses are computed in full mode.
pub const MINIMALITY_MAX_RANK: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Adds the E-set dichotomy, facet minimality and polygon oracles.
    pub full: bool,
    pub seed: u64,
    /// Orbit values; `None` means `rho`.
    pub support: Option<Vec<BigRational>>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            full: false,
            seed: DEFAULT_SEED,
            support: None,
        }
    }
}

/// Everything built for one type.
#[derive(Debug, Clone)]
pub struct Artifacts {
    pub catalog: RootCatalog,
    pub table: CompatTable,
    pub clusters: Vec<Cluster>,
    pub pairs: Vec<ExchangePair>,
    pub support: SupportFunction,
    pub realization: PolytopeRealization,
}

pub fn support_for(
    catalog: &RootCatalog,
    values: Option<&[BigRational]>,
) -> Result<SupportFunction> {
    match values {
        Some(v) => build_support_function(catalog, v),
        None => rho_support(catalog),
    }
}

/// Builds catalog, clusters, exchange pairs and the realization. Support
/// values are validated before any enumeration.
pub fn build(t: CartanType, values: Option<&[BigRational]>) -> Result<Artifacts> {
    let catalog = build_root_system(t)?;
    let support = support_for(&catalog, values)?;
    let table = CompatTable::new(&catalog)?;
    let clusters = enumerate_clusters(&catalog, &table)?;
    let pairs = exchange_pairs(&catalog, &table, &clusters)?;
    let realization = realize(&catalog, &clusters, &support)?;
    Ok(Artifacts {
        catalog,
        table,
        clusters,
        pairs,
        support,
        realization,
    })
}

fn stage<T>(report: &mut Report, name: &str, r: Result<T>) -> Option<T> {
    let mut check = Check::new(name);
    match r {
        Ok(v) => {
            check.checked += 1;
            report.push(check);
            Some(v)
        }
        Err(e) => {
            check.checked += 1;
            check.fail(e.to_string());
            report.push(check);
            None
        }
    }
}

/// Runs every check for `t`. Invalid support values are an error; anything
/// else that goes wrong is a failing check in the report.
pub fn verify_type(t: CartanType, opts: &VerifyOptions) -> Result<Report> {
    let catalog = build_root_system(t)?;
    let support = support_for(&catalog, opts.support.as_deref())?;
    let mut report = Report::new();
    report.extend(check_periodicity(&catalog));

    let Some(table) = stage(
        &mut report,
        "compatibility table",
        CompatTable::new(&catalog),
    ) else {
        return Ok(report);
    };
    let Some(clusters) = stage(
        &mut report,
        "clusters pure and unimodular",
        enumerate_clusters(&catalog, &table),
    ) else {
        return Ok(report);
    };
    if let Some(c) = report.checks.last_mut() {
        c.checked = clusters.len() as u64;
    }
    report.push(check_second_term(&catalog, &table));
    let Some(pairs) = stage(
        &mut report,
        "exchange pairs",
        exchange_pairs(&catalog, &table, &clusters),
    ) else {
        return Ok(report);
    };
    if let Some(c) = report.checks.last_mut() {
        c.checked = pairs.len() as u64;
    }
    let Some(real) = stage(
        &mut report,
        "realization",
        realize(&catalog, &clusters, &support),
    ) else {
        return Ok(report);
    };
    report.extend(verify_realization(
        &catalog, &support, &clusters, &pairs, &real,
    ));
    if let Some(cert) = stage(
        &mut report,
        "certificate construction",
        certificate_check(&catalog),
    ) {
        report.push(cert.check);
    }
    let sample = Sample::default_for(&catalog, opts.seed);
    report.extend(expansion_uniqueness_check(
        &catalog, &table, &clusters, sample,
    ));

    if opts.full {
        report.push(check_e_set_dichotomy(&catalog, &table));
        if catalog.rank() <= MINIMALITY_MAX_RANK {
            report.push(verify_minimality(&catalog, &real));
        }
        if matches!(t.family(), Family::A | Family::B | Family::C) {
            if let Some(model) = stage(
                &mut report,
                "polygon model",
                oracle_models::build_model(&catalog),
            ) {
                report.push(oracle_models::compare_degrees(&catalog, &model, &table));
                report.push(oracle_models::compare_orbits(&catalog, &model));
                let mut count = Check::new("maximal non-crossing sets equal clusters");
                if catalog.rank() <= 6 {
                    let m = model.count_maximal_noncrossing();
                    count.record(m == clusters.len() as u64, || {
                        format!("{m} non-crossing sets, {} clusters", clusters.len())
                    });
                    report.push(count);
                }
            }
        }
    }
    Ok(report)
}
