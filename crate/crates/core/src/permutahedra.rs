//! Type A_n: ordered partitions, the universal (braid) fan, the 0/1 weight
//! matrix and the deformation cone of generalized permutahedra.
//!
//! Points of the hyperplane Σx = c in ℝ^{n+1} are stored in ℤ^n by dropping
//! the last coordinate. A fan vector x ∈ ℝ^n stands for the class of (x, 0)
//! in ℝ^{n+1}/ℝ·(1,…,1).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::arith::lattice::{self, IntVector};
use crate::arith::linalg;
use crate::arith::Scalar;
use crate::error::{Error, Result};
use crate::minkowski;
use crate::polyhedra::complex::Complex;
use crate::polyhedra::fan::normal_fan;
use crate::polyhedra::polyhedron::{Halfspace, Polyhedron};
use crate::polyhedra::polytope::Polytope;

/// Sorted 1-based subset of [n+1].
pub type Subset = Vec<usize>;

pub const MAX_MATRIX_N: usize = 6;
pub const MAX_FAN_N: usize = 4;

/// Blocks in order; exactly one block has two elements.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrderedPartition {
    pub blocks: Vec<Vec<usize>>,
}

impl OrderedPartition {
    pub fn new(blocks: Vec<Vec<usize>>) -> Result<OrderedPartition> {
        let mut blocks = blocks;
        for b in &mut blocks {
            b.sort_unstable();
        }
        let doubles = blocks.iter().filter(|b| b.len() == 2).count();
        let singles = blocks.iter().filter(|b| b.len() == 1).count();
        let all: BTreeSet<usize> = blocks.iter().flatten().copied().collect();
        if doubles != 1 || singles + 1 != blocks.len() || all.len() != singles + 2 {
            return Err(Error::Schema("ordered partition needs one doubleton and disjoint singletons".into()));
        }
        Ok(OrderedPartition { blocks })
    }

    pub fn ground_set(&self) -> Subset {
        let mut s: Subset = self.blocks.iter().flatten().copied().collect();
        s.sort_unstable();
        s
    }

    pub fn doubleton_position(&self) -> usize {
        self.blocks.iter().position(|b| b.len() == 2).expect("doubleton")
    }

    pub fn doubleton(&self) -> &[usize] {
        &self.blocks[self.doubleton_position()]
    }

    fn sort_key(&self) -> (usize, Vec<usize>, Vec<usize>) {
        let p = self.doubleton_position();
        let rest = self.blocks.iter().filter(|b| b.len() == 1).map(|b| b[0]).collect();
        (p, self.blocks[p].clone(), rest)
    }
}

impl fmt::Display for OrderedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .blocks
            .iter()
            .map(|b| {
                if b.len() == 1 {
                    b[0].to_string()
                } else {
                    format!("{{{}}}", b.iter().map(ToString::to_string).collect::<Vec<_>>().join(","))
                }
            })
            .collect();
        write!(f, "({})", parts.join(","))
    }
}

pub fn subset_label(s: &[usize]) -> String {
    format!("{{{}}}", s.iter().map(ToString::to_string).collect::<Vec<_>>().join(","))
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (i, &x) in items.iter().enumerate() {
        let mut rest = items.to_vec();
        rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        for mut c in combinations(&items[i + 1..], k - 1) {
            c.insert(0, items[i]);
            out.push(c);
        }
    }
    out
}

/// Π_I ordered by doubleton position, then doubleton, then the singletons.
pub fn ordered_partitions(set: &[usize]) -> Result<Vec<OrderedPartition>> {
    let mut set = set.to_vec();
    set.sort_unstable();
    set.dedup();
    if set.len() < 2 {
        return Err(Error::TooSmall);
    }
    let k = set.len() - 1;
    let mut out = Vec::new();
    for pos in 0..k {
        for d in combinations(&set, 2) {
            let rest: Vec<usize> = set.iter().copied().filter(|x| !d.contains(x)).collect();
            for perm in permutations(&rest) {
                let mut blocks: Vec<Vec<usize>> = perm.iter().map(|&x| vec![x]).collect();
                blocks.insert(pos, d.clone());
                out.push(OrderedPartition { blocks });
            }
        }
    }
    out.sort_by_key(OrderedPartition::sort_key);
    Ok(out)
}

/// Subsets of [n+1] with at least two elements: by size, pairs by
/// (j − i, i), larger subsets lexicographically.
pub fn weight_subsets(n: usize) -> Vec<Subset> {
    let ground: Vec<usize> = (1..=n + 1).collect();
    let mut out = Vec::new();
    for k in 2..=n + 1 {
        let mut c = combinations(&ground, k);
        if k == 2 {
            c.sort_by_key(|p| (p[1] - p[0], p[0]));
        }
        out.extend(c);
    }
    out
}

/// π|_I: blocks of π inside I, when they cover I.
pub fn restricts_to(pi: &OrderedPartition, set: &[usize]) -> Option<OrderedPartition> {
    let inside = |b: &Vec<usize>| b.iter().all(|x| set.contains(x));
    let blocks: Vec<Vec<usize>> = pi.blocks.iter().filter(|b| inside(b)).cloned().collect();
    let covered: usize = blocks.iter().map(Vec::len).sum();
    (set.len() >= 2 && covered == set.len() && blocks.iter().any(|b| b.len() == 2))
        .then_some(OrderedPartition { blocks })
}

/// w_I↑(π): 1 iff π restricts to Π_I with a doubleton first.
pub fn extended_weight(pi: &OrderedPartition, set: &[usize]) -> u8 {
    restricts_to(pi, set).map_or(0, |r| u8::from(r.blocks[0].len() == 2))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightMatrix {
    pub n: usize,
    pub rows: Vec<OrderedPartition>,
    pub cols: Vec<Subset>,
    pub entries: Vec<Vec<u8>>,
}

impl WeightMatrix {
    pub fn to_csv(&self) -> String {
        let mut s = String::from("partition");
        for c in &self.cols {
            s.push_str(&format!(",\"{}\"", subset_label(c)));
        }
        s.push('\n');
        for (r, row) in self.rows.iter().zip(&self.entries) {
            s.push_str(&format!("\"{r}\""));
            for e in row {
                s.push_str(&format!(",{e}"));
            }
            s.push('\n');
        }
        s
    }

    pub fn row_of(&self, pi: &OrderedPartition) -> Option<usize> {
        self.rows.iter().position(|r| r == pi)
    }

    /// W·y.
    pub fn apply(&self, y: &[BigInt]) -> Vec<BigInt> {
        self.entries
            .iter()
            .map(|row| row.iter().zip(y).filter(|(e, _)| **e == 1).map(|(_, v)| v.clone()).sum())
            .collect()
    }
}

pub fn weight_matrix(n: usize) -> Result<WeightMatrix> {
    if n == 0 {
        return Err(Error::TooSmall);
    }
    if n > MAX_MATRIX_N {
        return Err(Error::TooLarge { what: "weight matrix n".into(), size: n, cap: MAX_MATRIX_N });
    }
    let ground: Vec<usize> = (1..=n + 1).collect();
    let rows = ordered_partitions(&ground)?;
    let cols = weight_subsets(n);
    let entries = rows.iter().map(|pi| cols.iter().map(|c| extended_weight(pi, c)).collect()).collect();
    Ok(WeightMatrix { n, rows, cols, entries })
}

/// Δ_I in the dropped-coordinate chart.
pub fn simplex_face(set: &[usize], n: usize) -> Polytope {
    let pts: Vec<IntVector> = set
        .iter()
        .map(|&i| (1..=n).map(|k| BigInt::from(u8::from(k == i))).collect())
        .collect();
    Polytope::from_int_points(n, &pts).expect("simplex face")
}

/// Back to ℝ^{n+1}: append s − Σx.
pub fn lift(p: &Polytope, s: &Scalar) -> Polytope {
    let pts: Vec<_> = p
        .vertices()
        .iter()
        .map(|v| {
            let mut w = v.clone();
            w.push(s - &v.iter().fold(Scalar::zero(), |a, b| a + b));
            w
        })
        .collect();
    Polytope::convex_hull(p.ambient_dim() + 1, &pts).expect("lift")
}

/// Drop the last coordinate.
pub fn project(p: &Polytope) -> Polytope {
    let n = p.ambient_dim() - 1;
    let pts: Vec<_> = p.vertices().iter().map(|v| v[..n].to_vec()).collect();
    Polytope::convex_hull(n, &pts).expect("projection")
}

/// The braid fan with each codimension-one cone labelled by its ordered
/// partition.
#[derive(Clone, Debug)]
pub struct UniversalFan {
    pub n: usize,
    pub fan: Complex,
    pub labels: Vec<OrderedPartition>,
}

impl UniversalFan {
    pub fn cell_of(&self, pi: &OrderedPartition) -> Option<usize> {
        self.labels.iter().position(|l| l == pi)
    }
}

/// The ordered partition of [n+1] read off from (x, 0).
pub fn partition_of_point(x: &[Scalar]) -> Vec<Vec<usize>> {
    let mut y = x.to_vec();
    y.push(Scalar::zero());
    blocks_by_value(&y)
}

/// Indices (1-based) grouped by equal value, largest first.
pub fn blocks_by_value(y: &[Scalar]) -> Vec<Vec<usize>> {
    let mut y: Vec<(Scalar, usize)> = y.iter().cloned().zip(1..).collect();
    y.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut last: Option<Scalar> = None;
    for (v, i) in y {
        if last.as_ref() == Some(&v) {
            blocks.last_mut().expect("block").push(i);
        } else {
            blocks.push(vec![i]);
            last = Some(v);
        }
    }
    blocks
}

/// Normal fan of the permutahedron conv{σ(1,…,n+1)}.
pub fn universal_fan(n: usize) -> Result<UniversalFan> {
    if n == 0 {
        return Err(Error::TooSmall);
    }
    if n > MAX_FAN_N {
        return Err(Error::TooLarge { what: "universal fan n".into(), size: n, cap: MAX_FAN_N });
    }
    let base: Vec<usize> = (1..=n + 1).collect();
    let pts: Vec<IntVector> = permutations(&base).iter().map(|p| p[..n].iter().map(|&x| BigInt::from(x)).collect()).collect();
    let fan = normal_fan(&Polytope::from_int_points(n, &pts)?)?;
    let labels = fan
        .cells
        .iter()
        .map(|c| OrderedPartition::new(partition_of_point(&c.point)))
        .collect::<Result<_>>()?;
    Ok(UniversalFan { n, fan, labels })
}

/// Sparse y: missing subsets are zero.
pub type SparseY = BTreeMap<Subset, BigInt>;

/// Keys like "12" or "-12" (subtract); every digit is an element of [n+1].
pub fn parse_y(entries: &[(String, BigInt)], n: usize) -> Result<SparseY> {
    let mut y = SparseY::new();
    for (key, v) in entries {
        let (neg, digits) = match key.strip_prefix('-') {
            Some(d) => (true, d),
            None => (false, key.as_str()),
        };
        let mut set: Subset = digits
            .chars()
            .map(|c| c.to_digit(10).map(|d| d as usize).filter(|&d| d >= 1 && d <= n + 1))
            .collect::<Option<_>>()
            .ok_or_else(|| Error::Schema(format!("bad subset key {key:?} for n={n}")))?;
        set.sort_unstable();
        set.dedup();
        if set.len() != digits.len() || set.is_empty() {
            return Err(Error::Schema(format!("bad subset key {key:?}")));
        }
        let e = y.entry(set).or_insert_with(BigInt::zero);
        if neg {
            *e -= v;
        } else {
            *e += v;
        }
    }
    Ok(y)
}

/// y in the column order of the weight matrix; singletons are dropped since
/// they only translate.
pub fn dense_y(y: &SparseY, n: usize) -> Result<Vec<BigInt>> {
    let cols = weight_subsets(n);
    for s in y.keys() {
        if s.iter().any(|&i| i == 0 || i > n + 1) {
            return Err(Error::Schema(format!("subset {} outside [{}]", subset_label(s), n + 1)));
        }
    }
    Ok(cols.iter().map(|c| y.get(c).cloned().unwrap_or_else(BigInt::zero)).collect())
}

/// Every π with (W·y)_π < 0, in row order.
pub fn deformation_violations(y: &SparseY, n: usize) -> Result<Vec<OrderedPartition>> {
    let w = weight_matrix(n)?;
    let wy = w.apply(&dense_y(y, n)?);
    Ok(wy.iter().zip(&w.rows).filter(|(v, _)| v.is_negative()).map(|(_, r)| r.clone()).collect())
}

pub fn deformation_cone_contains(y: &SparseY, n: usize) -> Result<bool> {
    Ok(deformation_violations(y, n)?.is_empty())
}

/// Irredundant primitive inequalities a·y ≥ 0 of {y : W·y ≥ 0}, sorted.
pub fn deformation_cone_facets(n: usize) -> Result<Vec<IntVector>> {
    let w = weight_matrix(n)?;
    let m = w.cols.len();
    let mut rows: Vec<IntVector> = w.entries.iter().map(|r| r.iter().map(|&e| BigInt::from(e)).collect()).collect();
    rows.sort();
    rows.dedup();
    let hs = rows.iter().map(|r| Halfspace::new(linalg::from_ints(r), Scalar::zero())).collect();
    let cone = Polyhedron::from_h(m, hs, Vec::new()).minimized();
    let mut out: Vec<IntVector> = cone
        .inequalities()
        .iter()
        .map(|h| linalg::primitive_integer(&h.normal).expect("rational facet"))
        .collect();
    out.sort();
    Ok(out)
}

/// Σ c_I·Δ_I in the chart, over the entries selected by `pick`.
fn simplex_sum(y: &[BigInt], cols: &[Subset], n: usize, pick: impl Fn(&BigInt) -> Option<BigInt>) -> Result<Polytope> {
    let mut acc = Polytope::origin(n);
    for (c, v) in cols.iter().zip(y) {
        if let Some(k) = pick(v) {
            acc = acc.minkowski_sum(&simplex_face(c, n).scale(&Scalar::from(k)))?;
        }
    }
    Ok(acc)
}

/// M with M + Σ y⁻ Δ_I = Σ y⁺ Δ_I in ℝ^{n+1}, or the violated partition.
pub fn polymatroid_from_weights(y: &SparseY, n: usize) -> Result<Polytope> {
    if let Some(pi) = deformation_violations(y, n)?.first() {
        return Err(Error::NotInCone(pi.to_string()));
    }
    let cols = weight_subsets(n);
    let yd = dense_y(y, n)?;
    let pos = simplex_sum(&yd, &cols, n, |v| v.is_positive().then(|| v.clone()))?;
    let neg = simplex_sum(&yd, &cols, n, |v| v.is_negative().then(|| -v))?;
    let m = minkowski::factor(&pos, &neg)?;
    let s: BigInt = yd.iter().sum();
    Ok(lift(&m, &Scalar::from(s)))
}

/// Every edge is parallel to some e_i − e_j.
pub fn is_generalized_permutahedron(p: &Polytope) -> bool {
    p.edge_pairs().iter().all(|&(a, b)| {
        let d = linalg::sub(&p.vertices()[a], &p.vertices()[b]);
        let nz: Vec<&Scalar> = d.iter().filter(|x| !x.is_zero()).collect();
        nz.len() == 2 && (nz[0] + nz[1]).is_zero()
    })
}

/// y with w_P↑ = W·y on the universal fan, for a lattice polytope P in
/// Σx = c of ℝ^{n+1}.
pub fn expand_in_simplices(p: &Polytope, n: usize) -> Result<Vec<BigInt>> {
    if p.ambient_dim() != n + 1 {
        return Err(Error::DimensionMismatch { expected: n + 1, got: p.ambient_dim() });
    }
    let u = universal_fan(n)?;
    let w = weight_matrix(n)?;
    let wp = minkowski::extended_polytope_weights(&u.fan, &project(p))?;
    let mut b = vec![BigInt::zero(); w.rows.len()];
    for (cell, lab) in u.labels.iter().enumerate() {
        b[w.row_of(lab).expect("label")] = wp[cell].clone();
    }
    let m = w.cols.len();
    let cols: Vec<_> = (0..m)
        .map(|j| w.entries.iter().map(|r| Scalar::from(i64::from(r[j]))).collect::<Vec<_>>())
        .collect();
    let y = linalg::solve_combination(&cols, &linalg::from_ints(&b)).ok_or(Error::NotRefined)?;
    linalg::to_ints(&y).ok_or(Error::NonIntegral)
}

/// Columns of W as weight vectors in the fan's cell order.
pub fn simplex_weight_vectors(u: &UniversalFan) -> Result<Vec<IntVector>> {
    let w = weight_matrix(u.n)?;
    Ok((0..w.cols.len())
        .map(|j| u.labels.iter().map(|l| BigInt::from(w.entries[w.row_of(l).expect("label")][j])).collect())
        .collect())
}

/// The simplex faces span the balanced weights of the universal fan.
pub fn simplex_family_is_basis(n: usize) -> Result<bool> {
    let u = universal_fan(n)?;
    let cols = simplex_weight_vectors(&u)?;
    Ok(lattice::lattice_equal(&cols, &minkowski::weight_kernel(&u.fan)))
}
