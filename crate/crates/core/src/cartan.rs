//! Cartan data, root catalogs and the bipartite sign convention.
//!
//! The catalog is the indexed set of almost positive roots: the `n` negative
//! simple roots first (index `i` is `-alpha_{i+1}`), then the positive roots
//! sorted by height and then lexicographically. Catalog indices are stable and
//! are what every other module passes around.
//!
//! Conventions:
//! - `a_ij = <alpha_i^vee, alpha_j>`, so `s_i(alpha_j) = alpha_j - a_ij alpha_i`.
//! - Simple roots are numbered as in Bourbaki. For `B_n`/`C_n` this gives
//!   `a_{n-1,n} = -d`, `a_{n,n-1} = -2/d` with `d = 1` (B) or `d = 2` (C). For
//!   `D_n` the two branch nodes are `n-1` and `n`, the latter labelled `nbar`.
//! - The node with the smallest index gets sign `+`; the sign alternates along
//!   the Coxeter graph.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::ops::{Add, Index, Neg, Sub};
use std::str::FromStr;

use num::integer::Integer;
use smallvec::SmallVec;

use crate::error::{consistency, Error, Result};
use crate::tau;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }

    fn from_letter(c: char) -> Option<Self> {
        Some(match c.to_ascii_uppercase() {
            'A' => Family::A,
            'B' => Family::B,
            'C' => Family::C,
            'D' => Family::D,
            'E' => Family::E,
            'F' => Family::F,
            'G' => Family::G,
            _ => return None,
        })
    }
}

/// An irreducible finite crystallographic Cartan type such as `E6`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CartanType {
    family: Family,
    rank: usize,
}

impl CartanType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let reason = match family {
            Family::A if rank < 1 => Some("type A needs rank >= 1"),
            Family::B if rank < 2 => Some("type B needs rank >= 2"),
            Family::C if rank < 2 => Some("type C needs rank >= 2"),
            Family::D if rank < 4 => Some("type D needs rank >= 4"),
            Family::E if !(6..=8).contains(&rank) => Some("type E needs rank 6, 7 or 8"),
            Family::F if rank != 4 => Some("type F needs rank 4"),
            Family::G if rank != 2 => Some("type G needs rank 2"),
            _ => None,
        };
        match reason {
            Some(reason) => Err(Error::InvalidRank {
                family: family.letter(),
                rank,
                reason,
            }),
            None => Ok(CartanType { family, rank }),
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_simply_laced(&self) -> bool {
        matches!(self.family, Family::A | Family::D | Family::E)
    }

    /// Every supported type with rank at most `max_rank`, in family order.
    pub fn all_up_to_rank(max_rank: usize) -> Vec<CartanType> {
        let mut out = Vec::new();
        for family in [
            Family::A,
            Family::B,
            Family::C,
            Family::D,
            Family::E,
            Family::F,
            Family::G,
        ] {
            for rank in 1..=max_rank {
                if let Ok(t) = CartanType::new(family, rank) {
                    out.push(t);
                }
            }
        }
        out
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

impl FromStr for CartanType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let family = chars
            .next()
            .and_then(Family::from_letter)
            .ok_or_else(|| Error::ParseType(s.to_string()))?;
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::ParseType(s.to_string()))?;
        CartanType::new(family, rank)
    }
}

/// A lattice vector in the simple-root basis: entry `i` is `[gamma : alpha_{i+1}]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct RootVec(SmallVec<[i64; 8]>);

impl RootVec {
    pub fn zero(n: usize) -> Self {
        RootVec(SmallVec::from_elem(0, n))
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = Self::zero(n);
        v.0[i] = 1;
        v
    }

    pub fn neg_simple(n: usize, i: usize) -> Self {
        let mut v = Self::zero(n);
        v.0[i] = -1;
        v
    }

    pub fn from_slice(coords: &[i64]) -> Self {
        RootVec(SmallVec::from_slice(coords))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn coords_mut(&mut self) -> &mut [i64] {
        &mut self.0
    }

    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    /// Keeps the positive coordinates and zeroes the rest.
    pub fn positive_part(&self) -> Self {
        RootVec(self.0.iter().map(|&c| c.max(0)).collect())
    }

    pub fn scaled(&self, k: i64) -> Self {
        RootVec(self.0.iter().map(|&c| c * k).collect())
    }

    pub fn add_scaled(&mut self, other: &RootVec, k: i64) {
        for (a, &b) in self.0.iter_mut().zip(other.0.iter()) {
            *a += k * b;
        }
    }

    /// Support: indices with a nonzero coordinate.
    pub fn support(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.0[i] != 0).collect()
    }

    /// Renders as `alpha_1 + 2 alpha_3` style text, with `labels` naming the
    /// simple roots.
    pub fn to_combination(&self, labels: &[String]) -> String {
        let mut out = String::new();
        for (i, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else { "+" };
            if out.is_empty() {
                if c < 0 {
                    out.push('-');
                }
            } else {
                out.push_str(sign);
            }
            if c.abs() != 1 {
                out.push_str(&c.abs().to_string());
            }
            out.push_str("a");
            out.push_str(&labels[i]);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    /// `[b1, b2, ...]` with the given separator between entries.
    pub fn bracketed(&self, sep: &str) -> String {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        format!("[{}]", parts.join(sep))
    }
}

impl Index<usize> for RootVec {
    type Output = i64;

    fn index(&self, i: usize) -> &i64 {
        &self.0[i]
    }
}

impl Add for &RootVec {
    type Output = RootVec;

    fn add(self, rhs: &RootVec) -> RootVec {
        debug_assert_eq!(self.len(), rhs.len());
        RootVec(
            self.0
                .iter()
                .zip(rhs.0.iter())
                .map(|(a, b)| a + b)
                .collect(),
        )
    }
}

impl Sub for &RootVec {
    type Output = RootVec;

    fn sub(self, rhs: &RootVec) -> RootVec {
        debug_assert_eq!(self.len(), rhs.len());
        RootVec(
            self.0
                .iter()
                .zip(rhs.0.iter())
                .map(|(a, b)| a - b)
                .collect(),
        )
    }
}

impl Neg for &RootVec {
    type Output = RootVec;

    fn neg(self) -> RootVec {
        RootVec(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for RootVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.bracketed(","))
    }
}

impl FromStr for RootVec {
    type Err = Error;

    /// Accepts `[1,0,-1]`, `1,0,-1` or `1 0 -1`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse {
            what: "lattice vector",
            input: s.to_string(),
        };
        let inner = s.trim().trim_start_matches('[').trim_end_matches(']');
        let coords: std::result::Result<Vec<i64>, _> = inner
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<i64>())
            .collect();
        let coords = coords.map_err(|_| bad())?;
        if coords.is_empty() {
            return Err(bad());
        }
        Ok(RootVec::from_slice(&coords))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }

    pub(crate) fn slot(self) -> usize {
        match self {
            Sign::Plus => 0,
            Sign::Minus => 1,
        }
    }
}

/// Square integer Cartan matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartanMatrix {
    n: usize,
    entries: Vec<i64>,
}

impl CartanMatrix {
    pub fn rank(&self) -> usize {
        self.n
    }

    /// `a_ij = <alpha_i^vee, alpha_j>` (zero-based indices).
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j)).collect())
            .collect()
    }

    fn set_pair(&mut self, i: usize, j: usize, a_ij: i64, a_ji: i64) {
        self.entries[i * self.n + j] = a_ij;
        self.entries[j * self.n + i] = a_ji;
    }

    /// Coxeter graph neighbours of `i`.
    pub fn neighbours(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&j| j != i && self.get(i, j) < 0)
    }

    /// Simple reflection `s_i(gamma) = gamma - <alpha_i^vee, gamma> alpha_i`.
    pub fn reflect(&self, i: usize, gamma: &RootVec) -> RootVec {
        let pairing: i64 = (0..self.n).map(|j| self.get(i, j) * gamma[j]).sum();
        let mut out = gamma.clone();
        out.coords_mut()[i] -= pairing;
        out
    }
}

pub fn cartan_matrix(t: CartanType) -> CartanMatrix {
    let n = t.rank();
    let mut m = CartanMatrix {
        n,
        entries: vec![0; n * n],
    };
    for i in 0..n {
        m.entries[i * n + i] = 2;
    }
    match t.family() {
        Family::A => {
            for i in 0..n - 1 {
                m.set_pair(i, i + 1, -1, -1);
            }
        }
        Family::B | Family::C => {
            for i in 0..n - 2 {
                m.set_pair(i, i + 1, -1, -1);
            }
            if t.family() == Family::B {
                m.set_pair(n - 2, n - 1, -1, -2);
            } else {
                m.set_pair(n - 2, n - 1, -2, -1);
            }
        }
        Family::D => {
            for i in 0..n - 2 {
                m.set_pair(i, i + 1, -1, -1);
            }
            m.set_pair(n - 3, n - 1, -1, -1);
        }
        Family::E => {
            m.set_pair(0, 2, -1, -1);
            m.set_pair(1, 3, -1, -1);
            for i in 2..n - 1 {
                m.set_pair(i, i + 1, -1, -1);
            }
        }
        Family::F => {
            m.set_pair(0, 1, -1, -1);
            m.set_pair(1, 2, -1, -2);
            m.set_pair(2, 3, -1, -1);
        }
        Family::G => {
            m.set_pair(0, 1, -3, -1);
        }
    }
    m
}

/// The indexed, immutable set of almost positive roots with its Cartan data.
#[derive(Debug, Clone)]
pub struct RootCatalog {
    ty: CartanType,
    cartan: CartanMatrix,
    roots: Vec<RootVec>,
    index: HashMap<RootVec, usize>,
    coroots: Vec<RootVec>,
    half_sq_len: Vec<i64>,
    sign: Vec<Sign>,
    coxeter_number: usize,
    minus_w0: Vec<usize>,
    tau_images: [Vec<usize>; 2],
}

impl RootCatalog {
    pub fn cartan_type(&self) -> CartanType {
        self.ty
    }

    pub fn rank(&self) -> usize {
        self.ty.rank()
    }

    /// Number of almost positive roots.
    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn positive_count(&self) -> usize {
        self.roots.len() - self.rank()
    }

    pub fn cartan(&self) -> &CartanMatrix {
        &self.cartan
    }

    #[inline]
    pub fn a(&self, i: usize, j: usize) -> i64 {
        self.cartan.get(i, j)
    }

    pub fn roots(&self) -> &[RootVec] {
        &self.roots
    }

    #[inline]
    pub fn root(&self, idx: usize) -> &RootVec {
        &self.roots[idx]
    }

    #[inline]
    pub fn index_of(&self, v: &RootVec) -> Option<usize> {
        self.index.get(v).copied()
    }

    /// Catalog index of `-alpha_i`.
    #[inline]
    pub fn neg_simple(&self, i: usize) -> usize {
        i
    }

    /// `Some(i)` when `idx` is `-alpha_i`.
    #[inline]
    pub fn as_neg_simple(&self, idx: usize) -> Option<usize> {
        (idx < self.rank()).then_some(idx)
    }

    /// Coroot of the root at `idx` in the simple-coroot basis.
    pub fn coroot(&self, idx: usize) -> &RootVec {
        &self.coroots[idx]
    }

    /// `(alpha_i, alpha_i) / 2` for a symmetrising form whose shortest roots
    /// have squared length 2.
    pub fn half_sq_len(&self, i: usize) -> i64 {
        self.half_sq_len[i]
    }

    pub fn signs(&self) -> &[Sign] {
        &self.sign
    }

    #[inline]
    pub fn sign(&self, i: usize) -> Sign {
        self.sign[i]
    }

    /// Simple indices with the given sign, ascending.
    pub fn part(&self, s: Sign) -> Vec<usize> {
        (0..self.rank()).filter(|&i| self.sign[i] == s).collect()
    }

    pub fn coxeter_number(&self) -> usize {
        self.coxeter_number
    }

    /// The diagram permutation `P` with `-w0(alpha_i) = alpha_{P(i)}`.
    pub fn minus_w0(&self) -> &[usize] {
        &self.minus_w0
    }

    /// Catalog image of `idx` under `tau_eps`.
    #[inline]
    pub fn tau_index(&self, eps: Sign, idx: usize) -> usize {
        self.tau_images[eps.slot()][idx]
    }

    /// Display label of simple index `i` (zero-based): `"1"`, `"2"`, ...; in
    /// type D the last node is `"{n}bar"`.
    pub fn simple_label(&self, i: usize) -> String {
        let n = self.rank();
        if self.ty.family() == Family::D && i == n - 1 {
            format!("{n}bar")
        } else {
            (i + 1).to_string()
        }
    }

    pub fn simple_labels(&self) -> Vec<String> {
        (0..self.rank()).map(|i| self.simple_label(i)).collect()
    }

    /// Human-readable form of the root at `idx`, e.g. `a1+a2`.
    pub fn describe(&self, idx: usize) -> String {
        self.roots[idx].to_combination(&self.simple_labels())
    }
}

/// Builds the catalog of almost positive roots for `t`.
pub fn build_root_system(t: CartanType) -> Result<RootCatalog> {
    let n = t.rank();
    let cartan = cartan_matrix(t);
    let positives = reflection_closure(&cartan)?;
    if positives.len() * 2 % n != 0 {
        return Err(consistency(format!(
            "{t}: 2|Phi+| = {} not divisible by the rank",
            positives.len() * 2
        )));
    }
    let coxeter_number = positives.len() * 2 / n;

    let mut roots: Vec<RootVec> = (0..n).map(|i| RootVec::neg_simple(n, i)).collect();
    roots.extend(positives);
    let index: HashMap<RootVec, usize> = roots
        .iter()
        .enumerate()
        .map(|(k, r)| (r.clone(), k))
        .collect();

    let sign = bipartition(&cartan);
    let half_sq_len = symmetrizer(&cartan)?;
    let coroots = roots
        .iter()
        .map(|r| coroot_of(&cartan, &half_sq_len, r))
        .collect::<Result<Vec<_>>>()?;

    let tau_images = [Sign::Plus, Sign::Minus].map(|eps| {
        roots
            .iter()
            .map(|r| index.get(&tau::tau_raw(&cartan, &sign, eps, r)).copied())
            .collect::<Option<Vec<usize>>>()
    });
    let [Some(plus), Some(minus)] = tau_images else {
        return Err(consistency(format!(
            "{t}: tau does not preserve the catalog"
        )));
    };

    let mut catalog = RootCatalog {
        ty: t,
        cartan,
        roots,
        index,
        coroots,
        half_sq_len,
        sign,
        coxeter_number,
        minus_w0: Vec::new(),
        tau_images: [plus, minus],
    };
    catalog.minus_w0 = minus_w0(&catalog)?;
    let order = coxeter_element_order(&catalog.cartan, &catalog.sign);
    if order != coxeter_number {
        return Err(consistency(format!(
            "{t}: Coxeter element has order {order}, expected h = {coxeter_number}"
        )));
    }
    Ok(catalog)
}

/// Positive roots by reflection closure of the simple roots, sorted by height
/// then lexicographically.
fn reflection_closure(cartan: &CartanMatrix) -> Result<Vec<RootVec>> {
    let n = cartan.rank();
    let mut seen: std::collections::HashSet<RootVec> =
        (0..n).map(|i| RootVec::unit(n, i)).collect();
    let mut frontier: Vec<RootVec> = (0..n).map(|i| RootVec::unit(n, i)).collect();
    // Generous bound: E8 has 120 positive roots.
    let limit = 4 * n * n * n + 64;
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for g in &frontier {
            for i in 0..n {
                let r = cartan.reflect(i, g);
                if r.is_nonnegative() && !r.is_zero() && seen.insert(r.clone()) {
                    next.push(r);
                }
            }
        }
        if seen.len() > limit {
            return Err(consistency("reflection closure did not terminate"));
        }
        frontier = next;
    }
    let mut out: Vec<RootVec> = seen.into_iter().collect();
    out.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| a.cmp(b)));
    Ok(out)
}

/// Proper 2-colouring of the Coxeter graph by BFS from index 0, which gets `+`.
pub fn bipartition(cartan: &CartanMatrix) -> Vec<Sign> {
    let n = cartan.rank();
    let mut sign: Vec<Option<Sign>> = vec![None; n];
    let mut queue = VecDeque::new();
    for start in 0..n {
        if sign[start].is_some() {
            continue;
        }
        sign[start] = Some(Sign::Plus);
        queue.push_back(start);
        while let Some(u) = queue.pop_front() {
            let su = sign[u].expect("visited");
            for v in cartan.neighbours(u) {
                if sign[v].is_none() {
                    sign[v] = Some(su.flip());
                    queue.push_back(v);
                }
            }
        }
    }
    sign.into_iter().map(|s| s.expect("all visited")).collect()
}

/// Integers `d_i` with `d_i a_ij = d_j a_ji`, normalised so the smallest is 1.
fn symmetrizer(cartan: &CartanMatrix) -> Result<Vec<i64>> {
    let n = cartan.rank();
    // Rational d_i as (num, den), propagated along the tree.
    let mut d: Vec<Option<(i64, i64)>> = vec![None; n];
    d[0] = Some((1, 1));
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        let (p, q) = d[i].expect("visited");
        for j in cartan.neighbours(i) {
            if d[j].is_none() {
                // d_j = d_i * a_ij / a_ji
                let num = p * cartan.get(i, j);
                let den = q * cartan.get(j, i);
                let g = num.gcd(&den);
                let (mut num, mut den) = (num / g, den / g);
                if den < 0 {
                    num = -num;
                    den = -den;
                }
                d[j] = Some((num, den));
                queue.push_back(j);
            }
        }
    }
    let d: Vec<(i64, i64)> = d.into_iter().map(|x| x.expect("connected")).collect();
    let l = d.iter().fold(1i64, |acc, &(_, q)| acc.lcm(&q));
    let ints: Vec<i64> = d.iter().map(|&(p, q)| p * (l / q)).collect();
    let g = ints.iter().fold(0i64, |acc, &x| acc.gcd(&x));
    let out: Vec<i64> = ints.iter().map(|&x| x / g).collect();
    for i in 0..n {
        for j in 0..n {
            if out[i] * cartan.get(i, j) != out[j] * cartan.get(j, i) {
                return Err(consistency("Cartan matrix is not symmetrisable"));
            }
        }
    }
    Ok(out)
}

/// `alpha^vee = 2 alpha / (alpha, alpha)` written in the simple-coroot basis:
/// `[alpha^vee : alpha_i^vee] = [alpha : alpha_i] (alpha_i, alpha_i) / (alpha, alpha)`.
fn coroot_of(cartan: &CartanMatrix, half_sq_len: &[i64], root: &RootVec) -> Result<RootVec> {
    let n = cartan.rank();
    // (alpha, alpha) / 2 with (alpha_i, alpha_j) = d_i a_ij.
    let mut sq = 0i64;
    for i in 0..n {
        for j in 0..n {
            sq += root[i] * root[j] * half_sq_len[i] * cartan.get(i, j);
        }
    }
    let half = sq / 2;
    if sq % 2 != 0 || half <= 0 {
        return Err(consistency(format!("{root} has non-root length")));
    }
    let mut out = RootVec::zero(n);
    for i in 0..n {
        let num = root[i] * half_sq_len[i];
        if num % half != 0 {
            return Err(consistency(format!(
                "{root}: coroot coordinate {i} not integral"
            )));
        }
        out.coords_mut()[i] = num / half;
    }
    Ok(out)
}

/// `P` with `(tau-word of length h+2)(-alpha_i) = -alpha_{P(i)}`, checked to be
/// an involutive automorphism of the Cartan matrix.
pub fn minus_w0(catalog: &RootCatalog) -> Result<Vec<usize>> {
    let n = catalog.rank();
    let word = tau::TauWord::alternating(Sign::Plus, catalog.coxeter_number() + 2);
    let mut perm = Vec::with_capacity(n);
    for i in 0..n {
        let img = word.apply_index(catalog, catalog.neg_simple(i));
        match catalog.as_neg_simple(img) {
            Some(p) => perm.push(p),
            None => {
                return Err(consistency(format!(
                    "{}: the (h+2)-word sends -alpha_{} to {}, not into -Pi",
                    catalog.cartan_type(),
                    i + 1,
                    catalog.root(img)
                )))
            }
        }
    }
    for i in 0..n {
        if perm[perm[i]] != i {
            return Err(consistency("-w0 permutation is not an involution"));
        }
        for j in 0..n {
            if catalog.a(perm[i], perm[j]) != catalog.a(i, j) {
                return Err(consistency("-w0 permutation is not a Cartan automorphism"));
            }
        }
    }
    Ok(perm)
}

/// Order of the Coxeter element `prod_{I-} s_i * prod_{I+} s_i` acting on the
/// root lattice.
pub fn coxeter_element_order(cartan: &CartanMatrix, sign: &[Sign]) -> usize {
    let n = cartan.rank();
    let apply = |v: &RootVec| {
        let mut v = v.clone();
        for s in [Sign::Plus, Sign::Minus] {
            for i in 0..n {
                if sign[i] == s {
                    v = cartan.reflect(i, &v);
                }
            }
        }
        v
    };
    let basis: Vec<RootVec> = (0..n).map(|i| RootVec::unit(n, i)).collect();
    let mut cur = basis.clone();
    for k in 1..=1000 {
        cur = cur.iter().map(&apply).collect();
        if cur == basis {
            return k;
        }
    }
    0
}

/// Reduced word (as a list of simple indices, first applied first) for the
/// longest Weyl group element, found by walking `2 rho` to its negative.
pub fn longest_element_word(catalog: &RootCatalog) -> Vec<usize> {
    let n = catalog.rank();
    let cartan = catalog.cartan();
    let mut v = RootVec::zero(n);
    for r in &catalog.roots()[n..] {
        v = &v + r;
    }
    let mut word = Vec::new();
    loop {
        let next = (0..n).find(|&i| (0..n).map(|j| cartan.get(i, j) * v[j]).sum::<i64>() > 0);
        match next {
            Some(i) => {
                v = cartan.reflect(i, &v);
                word.push(i);
            }
            None => break,
        }
    }
    word
}

/// `w0(gamma)` via [`longest_element_word`].
pub fn apply_w0(catalog: &RootCatalog, word: &[usize], gamma: &RootVec) -> RootVec {
    word.iter()
        .fold(gamma.clone(), |acc, &i| catalog.cartan().reflect(i, &acc))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cat(s: &str) -> RootCatalog {
        build_root_system(s.parse().unwrap()).unwrap()
    }

    #[test]
    fn a2_roots() {
        let c = cat("A2");
        let pos: Vec<String> = c.roots()[2..].iter().map(|r| r.to_string()).collect();
        assert_eq!(pos, ["[0,1]", "[1,0]", "[1,1]"]);
        assert_eq!(c.len(), 5);
    }

    #[test]
    fn c3_roots_match_listing() {
        let c = cat("C3");
        assert_eq!(c.positive_count(), 9);
        assert_eq!(c.len(), 12);
        // alpha[i] = 2(alpha_i + ... + alpha_{n-1}) + alpha_n
        for v in [[2, 2, 1], [0, 2, 1], [0, 0, 1]] {
            assert!(c.index_of(&RootVec::from_slice(&v)).is_some(), "{v:?}");
        }
        // alpha[i,k]_+ with 2/d = 1 on alpha_n
        for v in [[1, 1, 1], [1, 2, 1], [0, 1, 1]] {
            assert!(c.index_of(&RootVec::from_slice(&v)).is_some(), "{v:?}");
        }
    }

    #[test]
    fn d4_has_twelve_positive_roots() {
        let c = cat("D4");
        assert_eq!(c.positive_count(), 12);
        assert_eq!(c.len(), 16);
        assert!(c.index_of(&RootVec::from_slice(&[1, 2, 1, 1])).is_some());
    }

    #[test]
    fn positive_root_counts() {
        for (t, count) in [
            ("A1", 1),
            ("A4", 10),
            ("B3", 9),
            ("B4", 16),
            ("C4", 16),
            ("D5", 20),
            ("E6", 36),
            ("E7", 63),
            ("E8", 120),
            ("F4", 24),
            ("G2", 6),
        ] {
            assert_eq!(cat(t).positive_count(), count, "{t}");
        }
    }

    #[test]
    fn bipartitions() {
        assert_eq!(cat("A2").part(Sign::Plus), vec![0]);
        assert_eq!(cat("A2").part(Sign::Minus), vec![1]);
        assert_eq!(cat("A1").part(Sign::Plus), vec![0]);
        assert_eq!(cat("A3").part(Sign::Plus), vec![0, 2]);
        assert_eq!(cat("A3").part(Sign::Minus), vec![1]);
    }

    #[test]
    fn bipartition_is_proper() {
        for t in CartanType::all_up_to_rank(8) {
            let c = build_root_system(t).unwrap();
            for i in 0..t.rank() {
                for j in c.cartan().neighbours(i) {
                    assert_ne!(c.sign(i), c.sign(j), "{t}");
                }
            }
        }
    }

    #[test]
    fn coxeter_numbers() {
        assert_eq!(cat("A2").coxeter_number(), 3);
        assert_eq!(cat("C3").coxeter_number(), 6);
        assert_eq!(cat("E6").coxeter_number(), 12);
        assert_eq!(cat("E8").coxeter_number(), 30);
        assert_eq!(cat("G2").coxeter_number(), 6);
    }

    #[test]
    fn minus_w0_examples() {
        // zero-based: 1<->6, 3<->5, 2 and 4 fixed
        assert_eq!(cat("E6").minus_w0(), &[5, 1, 4, 3, 2, 0]);
        assert_eq!(cat("C3").minus_w0(), &[0, 1, 2]);
        assert_eq!(cat("A1").minus_w0(), &[0]);
        assert_eq!(cat("A4").minus_w0(), &[3, 2, 1, 0]);
        assert_eq!(cat("D5").minus_w0(), &[0, 1, 2, 4, 3]);
        assert_eq!(cat("D4").minus_w0(), &[0, 1, 2, 3]);
    }

    #[test]
    fn minus_w0_agrees_with_longest_element() {
        for t in CartanType::all_up_to_rank(8) {
            let c = build_root_system(t).unwrap();
            let word = longest_element_word(&c);
            assert_eq!(word.len(), c.positive_count(), "{t}: reduced length");
            for i in 0..t.rank() {
                let img = apply_w0(&c, &word, &RootVec::unit(t.rank(), i));
                assert_eq!(-&img, RootVec::unit(t.rank(), c.minus_w0()[i]), "{t}");
            }
        }
    }

    #[test]
    fn cartan_and_coroot_invariants() {
        for t in CartanType::all_up_to_rank(8) {
            let c = build_root_system(t).unwrap();
            let n = t.rank();
            for i in 0..n {
                assert_eq!(c.a(i, i), 2);
                for j in 0..n {
                    if i != j {
                        assert!(c.a(i, j) <= 0);
                    }
                }
            }
            assert_eq!(c.coxeter_number() * n, 2 * c.positive_count(), "{t}");
            for idx in n..c.len() {
                let root = c.root(idx);
                let corr = c.coroot(idx);
                // <alpha^vee, alpha> = sum_ij [alpha^vee:alpha_i^vee] a_ij [alpha:alpha_j]
                let mut pairing = 0;
                for i in 0..n {
                    for j in 0..n {
                        pairing += corr[i] * c.a(i, j) * root[j];
                    }
                }
                assert_eq!(pairing, 2, "{t} {root}");
                assert!(root.is_nonnegative());
            }
            if t.is_simply_laced() {
                for idx in 0..c.len() {
                    assert_eq!(c.coroot(idx), c.root(idx));
                }
            }
        }
    }

    #[test]
    fn invalid_ranks_are_rejected() {
        for s in ["A0", "B1", "C1", "D3", "E5", "E9", "F3", "G3"] {
            let err = s.parse::<CartanType>().unwrap_err();
            assert!(matches!(err, Error::InvalidRank { .. }), "{s}: {err}");
        }
        assert!(matches!(
            "X3".parse::<CartanType>(),
            Err(Error::ParseType(_))
        ));
        assert!(matches!(
            "A".parse::<CartanType>(),
            Err(Error::ParseType(_))
        ));
    }

    #[test]
    fn rootvec_parsing() {
        let v: RootVec = "[1, 0,-2]".parse().unwrap();
        assert_eq!(v.coords(), &[1, 0, -2]);
        assert_eq!(v.to_string(), "[1,0,-2]");
        assert!("[a,b]".parse::<RootVec>().is_err());
        assert!("[]".parse::<RootVec>().is_err());
    }

    #[test]
    fn d_labels_mark_the_branch_node() {
        let c = cat("D4");
        assert_eq!(c.simple_labels(), ["1", "2", "3", "4bar"]);
    }
}
