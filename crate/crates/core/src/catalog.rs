//! Benchmark algebras: Heisenberg, strictly upper triangular matrices,
//! free nilpotent algebras on a Hall basis, and the filiform family `f_n`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::{Field, Rationals};
use crate::lie_algebra::LieAlgebra;
use crate::linalg::{Accumulator, SparseVec};

/// Basis `(x, y, z)` with `[x, y] = z`.
pub fn heisenberg<F: Field>(field: F) -> LieAlgebra<F> {
    let one = field.one();
    LieAlgebra::from_brackets(field, 3, vec![(0, 1, vec![(2, one)])]).expect("valid table")
}

/// Index pairs `(i, j)`, `i < j`, of the elementary matrices spanning the
/// strictly upper triangular `n × n` matrices, in row-major order (1-based).
pub fn upper_triangular_labels(n: usize) -> Vec<(usize, usize)> {
    (1..=n).flat_map(|i| ((i + 1)..=n).map(move |j| (i, j))).collect()
}

/// Strictly upper triangular `n × n` matrices with the commutator bracket.
pub fn upper_triangular<F: Field>(n: usize, field: F) -> Result<LieAlgebra<F>> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("upper triangular needs n >= 2, got {n}")));
    }
    let labels = upper_triangular_labels(n);
    let index: HashMap<(usize, usize), usize> = labels.iter().enumerate().map(|(k, &l)| (l, k)).collect();
    let one = field.one();
    let minus_one = field.neg(&one);
    let mut brackets = Vec::new();
    for (a, &(i, j)) in labels.iter().enumerate() {
        for (b, &(k, l)) in labels.iter().enumerate().skip(a + 1) {
            // [E_ij, E_kl] = δ_jk E_il - δ_li E_kj
            let mut acc = Accumulator::new();
            if j == k {
                acc.add(&field, index[&(i, l)], &one);
            }
            if l == i {
                acc.add(&field, index[&(k, j)], &minus_one);
            }
            let v = acc.finish(&field);
            if !v.is_empty() {
                brackets.push((a, b, v));
            }
        }
    }
    LieAlgebra::from_brackets(field, labels.len(), brackets)
}

fn mobius(mut n: usize) -> i64 {
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// Dimension of the degree-`m` component of the free Lie algebra on `n`
/// generators: `(1/m) Σ_{e | m} μ(e) n^{m/e}`.
pub fn witt_layer_dimension(n: usize, m: usize) -> usize {
    let total: i128 = (1..=m)
        .filter(|e| m.is_multiple_of(*e))
        .map(|e| mobius(e) as i128 * (n as i128).pow((m / e) as u32))
        .sum();
    (total / m as i128) as usize
}

/// `Σ_{m ≤ c}` of [`witt_layer_dimension`].
pub fn witt_dimension(n: usize, c: usize) -> usize {
    (1..=c).map(|m| witt_layer_dimension(n, m)).sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum HallNode {
    Generator,
    Bracket(usize, usize),
}

/// Hall basis of the free Lie algebra on `n` generators, up to length `c`.
///
/// Construction order: by length, then by generation order, where a bracket
/// `[a, b]` of earlier elements is basic iff `a > b` and, when `a = [a1, a2]`,
/// `a2 <= b`. The basis is listed by length with each length block in
/// reverse construction order, and generators are named so that the first
/// listed one is `x1`. For two generators this gives
/// `x1, x2, [x1,x2], [[x1,x2],x1], [[x1,x2],x2], ...`.
#[derive(Debug, Clone)]
pub struct HallBasis {
    nodes: Vec<HallNode>,
    lengths: Vec<usize>,
    index: HashMap<(usize, usize), usize>,
    /// Listing position of each node.
    position: Vec<usize>,
    /// Node at each listing position.
    order: Vec<usize>,
    generators: usize,
    class: usize,
}

impl HallBasis {
    pub fn new(generators: usize, class: usize) -> Self {
        let mut nodes = vec![HallNode::Generator; generators];
        let mut lengths = vec![1; generators];
        let mut index = HashMap::new();
        let mut blocks = vec![(0, generators)];
        for len in 2..=class {
            let existing = nodes.len();
            for a in 0..existing {
                for b in 0..a {
                    if lengths[a] + lengths[b] != len {
                        continue;
                    }
                    if let HallNode::Bracket(_, a2) = nodes[a] {
                        if a2 > b {
                            continue;
                        }
                    }
                    index.insert((a, b), nodes.len());
                    nodes.push(HallNode::Bracket(a, b));
                    lengths.push(len);
                }
            }
            blocks.push((existing, nodes.len()));
        }
        let order: Vec<usize> = blocks.iter().flat_map(|&(lo, hi)| (lo..hi).rev()).collect();
        let mut position = vec![0; nodes.len()];
        for (p, &k) in order.iter().enumerate() {
            position[k] = p;
        }
        HallBasis {
            nodes,
            lengths,
            index,
            position,
            order,
            generators,
            class,
        }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Length of the element at listing position `k`.
    pub fn length(&self, k: usize) -> usize {
        self.lengths[self.order[k]]
    }

    /// Bracketed-word rendering of the element at listing position `k`.
    pub fn label(&self, k: usize) -> String {
        self.node_label(self.order[k])
    }

    fn node_label(&self, k: usize) -> String {
        match self.nodes[k] {
            HallNode::Generator => format!("x{}", self.generators - k),
            HallNode::Bracket(a, b) => format!("[{},{}]", self.node_label(a), self.node_label(b)),
        }
    }

    fn bracket<F: Field>(
        &self,
        field: &F,
        x: usize,
        y: usize,
        memo: &mut HashMap<(usize, usize), SparseVec<F::Elem>>,
    ) -> SparseVec<F::Elem> {
        if x == y || self.lengths[x] + self.lengths[y] > self.class {
            return Vec::new();
        }
        if let Some(v) = memo.get(&(x, y)) {
            return v.clone();
        }
        let result = if x < y {
            self.bracket(field, y, x, memo)
                .into_iter()
                .map(|(k, c)| (k, field.neg(&c)))
                .collect()
        } else {
            match self.nodes[x] {
                HallNode::Bracket(x1, x2) if x2 > y => {
                    // [[x1,x2],y] = [[x1,y],x2] + [x1,[x2,y]]
                    let mut acc = Accumulator::new();
                    for (u, c) in self.bracket(field, x1, y, memo) {
                        acc.add_scaled(field, &c, &self.bracket(field, u, x2, memo));
                    }
                    for (v, c) in self.bracket(field, x2, y, memo) {
                        acc.add_scaled(field, &c, &self.bracket(field, x1, v, memo));
                    }
                    acc.finish(field)
                }
                _ => vec![(self.index[&(x, y)], field.one())],
            }
        };
        memo.insert((x, y), result.clone());
        result
    }
}

/// Free nilpotent Lie algebra `N_{n,c}` on `n` generators of class `c`.
pub fn free_nilpotent<F: Field>(n: usize, c: usize, field: F) -> Result<LieAlgebra<F>> {
    if n < 2 || c < 1 {
        return Err(Error::InvalidParameter(format!(
            "free nilpotent needs n >= 2 and c >= 1, got ({n}, {c})"
        )));
    }
    let hall = HallBasis::new(n, c);
    let mut memo = HashMap::new();
    let mut brackets = Vec::new();
    for i in 0..hall.len() {
        for j in (i + 1)..hall.len() {
            let mut v: SparseVec<F::Elem> = hall
                .bracket(&field, hall.order[i], hall.order[j], &mut memo)
                .into_iter()
                .map(|(k, e)| (hall.position[k], e))
                .collect();
            v.sort_by_key(|(k, _)| *k);
            if !v.is_empty() {
                brackets.push((i, j, v));
            }
        }
    }
    LieAlgebra::from_brackets(field, hall.len(), brackets)
}

fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Parameters `α_{k,s}` of `f_n`, zero outside the stored entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiliformParams {
    pub n: usize,
    pub values: BTreeMap<(usize, usize), BigRational>,
}

impl FiliformParams {
    /// Membership in the index set `{2 ≤ k ≤ ⌊n/2⌋, 2k+1 ≤ s ≤ n}`, plus
    /// `(n/2, n)` for even `n`.
    pub fn in_index_set(&self, k: usize, s: usize) -> bool {
        let n = self.n;
        let base = (2..=n / 2).contains(&k) && s > 2 * k && s <= n;
        base || (n.is_multiple_of(2) && k == n / 2 && s == n)
    }

    pub fn get(&self, k: i64, s: i64) -> BigRational {
        if k < 0 || s < 0 || !self.in_index_set(k as usize, s as usize) {
            return BigRational::zero();
        }
        self.values.get(&(k as usize, s as usize)).cloned().unwrap_or_else(BigRational::zero)
    }
}

/// `α_{ℓ,2ℓ+1} = 3 / (C(ℓ,2) C(2ℓ-1, ℓ-1))`
pub fn alpha_diagonal(l: usize) -> BigRational {
    let l = l as i64;
    BigRational::new(BigInt::from(3), binomial(l, 2) * binomial(2 * l - 1, l - 1))
}

pub fn filiform_alpha(n: usize) -> Result<FiliformParams> {
    if n < 13 {
        return Err(Error::InvalidParameter(format!("f_n is defined for n >= 13, got {n}")));
    }
    let mut values = BTreeMap::new();
    for l in 2..=(n - 1) / 2 {
        values.insert((l, 2 * l + 1), alpha_diagonal(l));
    }
    let m = n as i64;
    values.insert((3, n - 4), int(1));
    values.insert(
        (4, n - 2),
        rat(1, 7) + rat(10, 21) * rat((m - 7) * (m - 8), (m - 4) * (m - 5)),
    );
    if n == 13 {
        values.insert((4, n), rat(22105, 15246));
    }
    let alpha_5n = rat(1, 42) - rat(70 * (m - 8), 11 * (m - 2) * (m - 3) * (m - 4) * (m - 5))
        + rat(25, 99) * rat((m - 6) * (m - 7) * (m - 8), (m - 2) * (m - 3) * (m - 4))
        + rat(5, 66) * rat((m - 5) * (m - 6), (m - 2) * (m - 3))
        - rat(65, 1386) * rat((m - 7) * (m - 8), (m - 4) * (m - 5));
    values.insert((5, n), alpha_5n);
    values.retain(|_, v| !v.is_zero());
    Ok(FiliformParams { n, values })
}

/// Structure constants of `f_n` from an explicit parameter map.
pub fn filiform_from_params<F: Field>(params: &FiliformParams, field: F) -> Result<LieAlgebra<F>> {
    if field.spec().characteristic != 0 {
        return Err(Error::InvalidField("f_n is defined over characteristic zero only".into()));
    }
    let n = params.n;
    let mut brackets = Vec::new();
    // 1-based formulas; basis index e_r is stored at r - 1.
    for i in 2..n {
        brackets.push((0, i - 1, vec![(i, field.one())]));
    }
    for i in 2..=n {
        for j in (i + 1)..=n {
            let mut v = Vec::new();
            for r in 1..=n {
                let mut coef = BigRational::zero();
                for l in 0..=(j - i - 1) / 2 {
                    let b = binomial((j - i - l - 1) as i64, l as i64);
                    if b.is_zero() {
                        continue;
                    }
                    let a = params.get((i + l) as i64, r as i64 - j as i64 + i as i64 + 2 * l as i64 + 1);
                    if a.is_zero() {
                        continue;
                    }
                    let term = BigRational::from_integer(b) * a;
                    if l % 2 == 0 {
                        coef += term;
                    } else {
                        coef -= term;
                    }
                }
                if !coef.is_zero() {
                    v.push((r - 1, field.from_rational(&coef)?));
                }
            }
            if !v.is_empty() {
                brackets.push((i - 1, j - 1, v));
            }
        }
    }
    LieAlgebra::from_brackets(field, n, brackets)
}

/// The filiform algebra `f_n` over `Q`, `n ≥ 13`.
pub fn filiform_f(n: usize) -> Result<LieAlgebra<Rationals>> {
    filiform_f_in(n, Rationals)
}

/// `f_n` over a generic field; fails unless the characteristic is zero.
pub fn filiform_f_in<F: Field>(n: usize, field: F) -> Result<LieAlgebra<F>> {
    if field.spec().characteristic != 0 {
        return Err(Error::InvalidField("f_n is defined over characteristic zero only".into()));
    }
    let params = filiform_alpha(n)?;
    filiform_from_params(&params, field)
}

/// Left and right sides of the three alternating-sum identities satisfied
/// by the diagonal parameters `α_{ℓ,2ℓ+1}`.
pub fn pfaff_sides(n: usize) -> Result<[(BigRational, BigRational); 3]> {
    if n < 13 {
        return Err(Error::InvalidParameter(format!("identities hold for n >= 13, got {n}")));
    }
    let m = n as i64;
    let top = (n - 1) / 2;
    let sign = |e: usize| if e.is_multiple_of(2) { int(1) } else { int(-1) };
    let sum = |from: usize, shift: i64, lower: i64, odd_sign: bool| -> BigRational {
        (from..=top)
            .map(|l| {
                let li = l as i64;
                let s = if odd_sign { sign(l + 1) } else { sign(l) };
                s * BigRational::from_integer(binomial(m - li - shift, li - lower)) * alpha_diagonal(l)
            })
            .fold(BigRational::zero(), |a, b| a + b)
    };
    let lhs1 = sum(3, 5, 2, true);
    let rhs1 = rat((m - 7) * (m - 8), (m - 4) * (m - 5));
    let lhs2 = sum(5, 5, 4, false);
    let rhs2 = rat(-1, 70) + rat(12 * (m - 8), (m - 2) * (m - 3) * (m - 4) * (m - 5));
    let lhs3 = sum(3, 3, 2, false);
    let rhs3 = -rat((m - 5) * (m - 6), (m - 2) * (m - 3));
    Ok([(lhs1, rhs1), (lhs2, rhs2), (lhs3, rhs3)])
}

/// 1-based numbers of the identities that fail (empty when all hold).
pub fn pfaff_check(n: usize) -> Result<Vec<usize>> {
    Ok(pfaff_sides(n)?
        .iter()
        .enumerate()
        .filter(|(_, (l, r))| l != r)
        .map(|(k, _)| k + 1)
        .collect())
}

/// Catalog family names as accepted by the CLI.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CatalogName {
    Heisenberg,
    UpperTriangular(usize),
    FreeNilpotent(usize, usize),
    Filiform(usize),
}

impl CatalogName {
    pub fn build<F: Field>(&self, field: F) -> Result<LieAlgebra<F>> {
        match *self {
            CatalogName::Heisenberg => Ok(heisenberg(field)),
            CatalogName::UpperTriangular(n) => upper_triangular(n, field),
            CatalogName::FreeNilpotent(n, c) => free_nilpotent(n, c, field),
            CatalogName::Filiform(n) => filiform_f_in(n, field),
        }
    }
}

impl fmt::Display for CatalogName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CatalogName::Heisenberg => write!(f, "heisenberg"),
            CatalogName::UpperTriangular(n) => write!(f, "utri:{n}"),
            CatalogName::FreeNilpotent(n, c) => write!(f, "freenilp:{n},{c}"),
            CatalogName::Filiform(n) => write!(f, "filiform:{n}"),
        }
    }
}

impl FromStr for CatalogName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("unknown catalog algebra `{s}`"));
        let num = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
        let (family, args) = match s.split_once(':') {
            Some((f, a)) => (f, Some(a)),
            None => (s, None),
        };
        match (family, args) {
            ("heisenberg", None) => Ok(CatalogName::Heisenberg),
            ("utri", Some(a)) => Ok(CatalogName::UpperTriangular(num(a)?)),
            ("filiform", Some(a)) => Ok(CatalogName::Filiform(num(a)?)),
            ("freenilp", Some(a)) => {
                let (n, c) = a.split_once(',').ok_or_else(bad)?;
                Ok(CatalogName::FreeNilpotent(num(n)?, num(c)?))
            }
            _ => Err(bad()),
        }
    }
}
