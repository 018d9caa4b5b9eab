//! Support functions: values on the almost positive roots, constant along
//! `tau`-orbits.

use num::{BigInt, BigRational, Signed, Zero};

use crate::cartan::RootCatalog;
use crate::error::{Error, Result};
use crate::tau::{orbits, OrbitPartition};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SupportMode {
    /// `F(-alpha_i) = [rho^vee : alpha_i^vee]`.
    Rho,
    Custom,
}

impl SupportMode {
    pub fn name(self) -> &'static str {
        match self {
            SupportMode::Rho => "rho",
            SupportMode::Custom => "custom",
        }
    }
}

/// A validated support function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportFunction {
    pub mode: SupportMode,
    pub orbits: OrbitPartition,
    /// One value per orbit, in orbit order.
    pub base_values: Vec<BigRational>,
    /// One value per catalog index.
    pub full: Vec<BigRational>,
}

impl SupportFunction {
    #[inline]
    pub fn value(&self, idx: usize) -> &BigRational {
        &self.full[idx]
    }

    /// `F(-alpha_i)` for every simple index.
    pub fn simple_values(&self, catalog: &RootCatalog) -> Vec<BigRational> {
        (0..catalog.rank())
            .map(|i| self.full[catalog.neg_simple(i)].clone())
            .collect()
    }

    /// `sum_i a_ij F(-alpha_i)` for every `j`.
    pub fn regularity_sums(&self, catalog: &RootCatalog) -> Vec<BigRational> {
        regularity_sums(catalog, &self.simple_values(catalog))
    }

    /// Multiplies every value by `t`.
    pub fn scaled(&self, t: &BigRational) -> SupportFunction {
        SupportFunction {
            mode: SupportMode::Custom,
            orbits: self.orbits.clone(),
            base_values: self.base_values.iter().map(|v| v * t).collect(),
            full: self.full.iter().map(|v| v * t).collect(),
        }
    }
}

fn regularity_sums(catalog: &RootCatalog, simple: &[BigRational]) -> Vec<BigRational> {
    let n = catalog.rank();
    (0..n)
        .map(|j| {
            (0..n).fold(BigRational::zero(), |acc, i| {
                acc + &simple[i] * BigRational::from_integer(BigInt::from(catalog.a(i, j)))
            })
        })
        .collect()
}

/// `[rho^vee : alpha_i^vee]`, half the sum of the positive coroots.
pub fn rho_vee(catalog: &RootCatalog) -> Vec<BigRational> {
    let n = catalog.rank();
    let mut sums = vec![0i64; n];
    for idx in n..catalog.len() {
        for (i, s) in sums.iter_mut().enumerate() {
            *s += catalog.coroot(idx)[i];
        }
    }
    sums.into_iter()
        .map(|s| BigRational::new(BigInt::from(s), BigInt::from(2)))
        .collect()
}

/// The number of orbit values a custom support function takes.
pub fn orbit_count(catalog: &RootCatalog) -> usize {
    orbits(catalog).len()
}

/// Builds from `rho^vee`.
pub fn rho_support(catalog: &RootCatalog) -> Result<SupportFunction> {
    from_simple_values(catalog, &rho_vee(catalog), SupportMode::Rho)
}

/// Builds from one value per orbit (orbits ordered by their smallest simple
/// index).
pub fn build_support_function(
    catalog: &RootCatalog,
    orbit_values: &[BigRational],
) -> Result<SupportFunction> {
    let parts = orbits(catalog);
    if orbit_values.len() != parts.len() {
        return Err(Error::OrbitCount {
            expected: parts.len(),
            got: orbit_values.len(),
        });
    }
    let simple: Vec<BigRational> = (0..catalog.rank())
        .map(|i| orbit_values[parts.orbit_of_simple(i)].clone())
        .collect();
    from_simple_values(catalog, &simple, SupportMode::Custom)
}

/// Builds from `F(-alpha_i)` per simple index, rejecting values that are not
/// positive, not constant on `-w0`-orbits, or fail
/// `sum_i a_ij F(-alpha_i) > 0`.
pub fn from_simple_values(
    catalog: &RootCatalog,
    simple: &[BigRational],
    mode: SupportMode,
) -> Result<SupportFunction> {
    let n = catalog.rank();
    if simple.len() != n {
        return Err(Error::Arity {
            expected: n,
            got: simple.len(),
        });
    }
    let p = catalog.minus_w0();
    for i in 0..n {
        if simple[i] != simple[p[i]] {
            let mut orbit = vec![i + 1, p[i] + 1];
            orbit.sort_unstable();
            return Err(Error::NotW0Invariant { orbit });
        }
    }
    let failing: Vec<usize> = (0..n)
        .filter(|&i| !simple[i].is_positive())
        .map(|i| i + 1)
        .collect();
    if !failing.is_empty() {
        return Err(Error::NonPositive { failing });
    }
    let failing: Vec<usize> = regularity_sums(catalog, simple)
        .iter()
        .enumerate()
        .filter(|(_, s)| !s.is_positive())
        .map(|(j, _)| j + 1)
        .collect();
    if !failing.is_empty() {
        return Err(Error::NotRegular { failing });
    }
    let parts = orbits(catalog);
    let base_values: Vec<BigRational> = parts
        .representatives
        .iter()
        .map(|reps| simple[reps[0]].clone())
        .collect();
    let full = parts
        .orbit_of
        .iter()
        .map(|&o| base_values[o].clone())
        .collect();
    Ok(SupportFunction {
        mode,
        orbits: parts,
        base_values,
        full,
    })
}

/// Parses `"3/2, 2"` style lists of rationals.
pub fn parse_values(s: &str) -> Result<Vec<BigRational>> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<BigRational>().map_err(|_| Error::Parse {
                what: "rational value",
                input: t.to_string(),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::{build_root_system, CartanType};
    use num::One;

    fn cat(s: &str) -> RootCatalog {
        build_root_system(s.parse().unwrap()).unwrap()
    }

    fn r(s: &str) -> BigRational {
        s.parse().unwrap()
    }

    fn rs(v: &[&str]) -> Vec<BigRational> {
        v.iter().map(|s| r(s)).collect()
    }

    #[test]
    fn rho_values() {
        assert_eq!(
            rho_support(&cat("A3")).unwrap().base_values,
            rs(&["3/2", "2"])
        );
        assert_eq!(
            rho_support(&cat("C3")).unwrap().base_values,
            rs(&["5/2", "4", "9/2"])
        );
    }

    #[test]
    fn rho_regularity_sums_are_one() {
        for t in CartanType::all_up_to_rank(8) {
            let c = build_root_system(t).unwrap();
            let f = rho_support(&c).unwrap();
            assert!(f.regularity_sums(&c).iter().all(|x| x.is_one()), "{t}");
        }
    }

    #[test]
    fn a3_gate() {
        let c = cat("A3");
        assert!(build_support_function(&c, &rs(&["1", "3"])).is_err());
        assert!(build_support_function(&c, &rs(&["1", "3/2"])).is_ok());
        assert!(matches!(
            build_support_function(&c, &rs(&["1", "2"])),
            Err(Error::NotRegular { .. })
        ));
        assert!(matches!(
            build_support_function(&c, &rs(&["1"])),
            Err(Error::OrbitCount {
                expected: 2,
                got: 1
            })
        ));
    }

    #[test]
    fn w0_invariance_is_required() {
        let c = cat("A3");
        let err =
            from_simple_values(&c, &rs(&["1", "3/2", "11/10"]), SupportMode::Custom).unwrap_err();
        assert_eq!(err, Error::NotW0Invariant { orbit: vec![1, 3] });
        let err =
            from_simple_values(&c, &rs(&["-1", "3/2", "-1"]), SupportMode::Custom).unwrap_err();
        assert!(matches!(err, Error::NonPositive { .. }));
    }

    #[test]
    fn values_are_constant_on_orbits() {
        let c = cat("E6");
        let f = rho_support(&c).unwrap();
        for (o, members) in f.orbits.orbits.iter().enumerate() {
            for &m in members {
                assert_eq!(f.value(m), &f.base_values[o]);
            }
        }
        assert_eq!(f.base_values.len(), 4);
    }

    #[test]
    fn parse_rationals() {
        assert_eq!(parse_values("3/2, 2").unwrap(), rs(&["3/2", "2"]));
        assert!(parse_values("x").is_err());
    }
}
