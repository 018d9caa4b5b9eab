//! JSON, OFF and plain-text renderings of a realization.

use std::collections::HashSet;
use std::fmt::Write as _;

use num::{BigInt, BigRational, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::cartan::{RootCatalog, Sign};
use crate::clusters::Cluster;
use crate::error::{consistency, Error, Result};

use super::realize::PolytopeRealization;
use super::support::SupportFunction;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Off,
    Txt,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(Format::Json),
            "off" => Ok(Format::Off),
            "txt" | "text" => Ok(Format::Txt),
            _ => Err(Error::Parse {
                what: "output format",
                input: s.to_string(),
            }),
        }
    }
}

#[derive(Serialize)]
struct Bipartition {
    plus: Vec<String>,
    minus: Vec<String>,
}

#[derive(Serialize)]
struct Convention {
    bipartition: Bipartition,
    ordering: &'static str,
    labels: Vec<String>,
}

#[derive(Serialize)]
struct SupportJson {
    mode: &'static str,
    orbit_values: Vec<String>,
}

#[derive(Serialize)]
struct FacetJson {
    normal: Vec<i64>,
    rhs: String,
}

#[derive(Serialize)]
struct PolytopeJson {
    #[serde(rename = "type")]
    ty: String,
    convention: Convention,
    support: SupportJson,
    roots: Vec<Vec<i64>>,
    clusters: Vec<Vec<usize>>,
    vertices: Vec<Vec<String>>,
    facets: Vec<FacetJson>,
    verified: bool,
}

pub const ORDERING: &str =
    "negative simple roots first, then positive roots by height, then lexicographic";

pub fn to_json(
    catalog: &RootCatalog,
    f: &SupportFunction,
    clusters: &[Cluster],
    real: &PolytopeRealization,
    verified: bool,
) -> String {
    let labels = catalog.simple_labels();
    let part = |s: Sign| {
        catalog
            .part(s)
            .into_iter()
            .map(|i| labels[i].clone())
            .collect()
    };
    let doc = PolytopeJson {
        ty: catalog.cartan_type().to_string(),
        convention: Convention {
            bipartition: Bipartition {
                plus: part(Sign::Plus),
                minus: part(Sign::Minus),
            },
            ordering: ORDERING,
            labels: labels.clone(),
        },
        support: SupportJson {
            mode: f.mode.name(),
            orbit_values: f.base_values.iter().map(|v| v.to_string()).collect(),
        },
        roots: catalog
            .roots()
            .iter()
            .map(|r| r.coords().to_vec())
            .collect(),
        clusters: clusters.iter().map(|c| c.members.clone()).collect(),
        vertices: real
            .vertices
            .iter()
            .map(|v| v.iter().map(|x| x.to_string()).collect())
            .collect(),
        facets: real
            .facets
            .iter()
            .map(|fa| FacetJson {
                normal: fa.normal.coords().to_vec(),
                rhs: fa.rhs.to_string(),
            })
            .collect(),
        verified,
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("plain data serialises");
    s.push('\n');
    s
}

/// Inequalities `sum_j [alpha:alpha_j] z_j <= F(alpha)`, one per line, in
/// catalog order.
pub fn to_txt(catalog: &RootCatalog, real: &PolytopeRealization) -> String {
    let mut out = String::new();
    for (k, fa) in real.facets.iter().enumerate() {
        let mut lhs = String::new();
        for (j, &a) in fa.normal.coords().iter().enumerate() {
            if a == 0 {
                continue;
            }
            let var = format!("z{}", catalog.simple_label(j));
            let mag = if a.abs() == 1 {
                var
            } else {
                format!("{}{}", a.abs(), var)
            };
            if lhs.is_empty() {
                if a < 0 {
                    lhs.push('-');
                }
            } else {
                lhs.push_str(if a < 0 { " - " } else { " + " });
            }
            lhs.push_str(&mag);
        }
        let _ = writeln!(out, "{lhs} <= {}    # {}", fa.rhs, catalog.describe(k));
    }
    out
}

fn sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn cross(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    vec![
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

fn dot_int(a: &[BigRational], normal: &[i64]) -> BigRational {
    a.iter()
        .zip(normal)
        .fold(BigRational::zero(), |acc, (x, &n)| {
            acc + x * BigRational::from_integer(BigInt::from(n))
        })
}

/// Vertex cycles of each facet, counter-clockwise seen from outside.
///
/// Two vertices of a facet are joined when their clusters share that facet's
/// root and one more, i.e. differ by a single exchange.
pub fn facet_cycles(
    catalog: &RootCatalog,
    clusters: &[Cluster],
    real: &PolytopeRealization,
) -> Result<Vec<Vec<usize>>> {
    if catalog.rank() != 3 {
        return Err(Error::OffRank(catalog.rank()));
    }
    let mut faces = Vec::with_capacity(real.facets.len());
    for k in 0..real.facets.len() {
        let on: Vec<usize> = (0..clusters.len())
            .filter(|&v| clusters[v].contains(k))
            .collect();
        let adjacent = |a: usize, b: usize| {
            let sa: HashSet<usize> = clusters[a].members.iter().copied().collect();
            clusters[b]
                .members
                .iter()
                .filter(|m| sa.contains(m))
                .count()
                == 2
        };
        let mut cycle = vec![on[0]];
        let mut used: HashSet<usize> = HashSet::from([on[0]]);
        while cycle.len() < on.len() {
            let last = *cycle.last().expect("non-empty");
            let next = on
                .iter()
                .copied()
                .find(|&v| !used.contains(&v) && adjacent(last, v))
                .ok_or_else(|| consistency(format!("facet {} is not a cycle", catalog.root(k))))?;
            used.insert(next);
            cycle.push(next);
        }
        if cycle.len() < 3 || !adjacent(cycle[0], *cycle.last().expect("non-empty")) {
            return Err(consistency(format!(
                "facet {} does not close up",
                catalog.root(k)
            )));
        }
        let v = |i: usize| &real.vertices[cycle[i]];
        let turn = cross(&sub(v(1), v(0)), &sub(v(2), v(1)));
        if dot_int(&turn, real.facets[k].normal.coords()).is_negative() {
            cycle.reverse();
        }
        faces.push(cycle);
    }
    Ok(faces)
}

fn decimal(x: &BigRational) -> String {
    let f = x.to_f64().unwrap_or(f64::NAN);
    let s = format!("{f:.6}");
    let s = s.trim_end_matches('0').trim_end_matches('.').to_string();
    if s == "-0" {
        "0".to_string()
    } else {
        s
    }
}

/// OFF with decimal vertex coordinates, each preceded by a comment holding
/// the exact rationals.
pub fn to_off(
    catalog: &RootCatalog,
    clusters: &[Cluster],
    real: &PolytopeRealization,
) -> Result<String> {
    let faces = facet_cycles(catalog, clusters, real)?;
    let edges: usize = faces.iter().map(Vec::len).sum::<usize>() / 2;
    let mut out = String::new();
    let _ = writeln!(out, "OFF");
    let _ = writeln!(out, "# {} generalized associahedron", catalog.cartan_type());
    let _ = writeln!(out, "{} {} {}", real.vertices.len(), faces.len(), edges);
    for (k, v) in real.vertices.iter().enumerate() {
        let exact: Vec<String> = v.iter().map(|x| x.to_string()).collect();
        let _ = writeln!(
            out,
            "# v{k} = ({}) cluster {:?}",
            exact.join(", "),
            clusters[k].members
        );
        let dec: Vec<String> = v.iter().map(decimal).collect();
        let _ = writeln!(out, "{}", dec.join(" "));
    }
    for face in &faces {
        let idx: Vec<String> = face.iter().map(|i| i.to_string()).collect();
        let _ = writeln!(out, "{} {}", face.len(), idx.join(" "));
    }
    Ok(out)
}

pub fn export(
    catalog: &RootCatalog,
    f: &SupportFunction,
    clusters: &[Cluster],
    real: &PolytopeRealization,
    verified: bool,
    format: Format,
) -> Result<String> {
    match format {
        Format::Json => Ok(to_json(catalog, f, clusters, real, verified)),
        Format::Off => to_off(catalog, clusters, real),
        Format::Txt => Ok(to_txt(catalog, real)),
    }
}
