//! Integral homology in degrees 0..=5.
//!
//! Closed-form homology of manifold descriptions and of wedge terms, plus an
//! independent cellular route: Smith normal form over `Z` and homology of
//! explicit chain complexes.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::arith::factorize;
use crate::manifold::ManifoldSpec;
use crate::terms::SpaceTerm;

pub const TOP_DEGREE: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomologyError {
    #[error("degree {0} is outside 0..=5")]
    DegreeOutOfRange(usize),
    #[error("not a chain complex: boundary {0} composed with boundary {1} is nonzero")]
    NotAChainComplex(usize, usize),
    #[error("dimension mismatch between boundary {0} and boundary {1}")]
    DimensionMismatch(usize, usize),
    #[error("torsion coefficient {0} does not fit in 64 bits")]
    TorsionTooLarge(BigInt),
    #[error("ragged matrix: row {0} has {1} entries, expected {2}")]
    RaggedMatrix(usize, usize, usize),
}

/// One degree of a finitely generated abelian group: `Z^free_rank` plus
/// cyclic summands of prime-power order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct AbelianGroup {
    pub free_rank: u32,
    torsion: Vec<u64>,
}

impl AbelianGroup {
    pub fn new(free_rank: u32, torsion: impl IntoIterator<Item = u64>) -> Self {
        let mut g = Self {
            free_rank,
            torsion: Vec::new(),
        };
        for q in torsion {
            g.add_cyclic(q);
        }
        g
    }

    pub fn free(free_rank: u32) -> Self {
        Self {
            free_rank,
            torsion: Vec::new(),
        }
    }

    /// Sorted prime-power orders of the torsion summands.
    pub fn torsion(&self) -> &[u64] {
        &self.torsion
    }

    /// Adds `Z/q`, split into its primary parts; `q = 1` is the zero group.
    pub fn add_cyclic(&mut self, q: u64) {
        assert!(q > 0, "Z/0 is a free summand");
        for (p, e) in factorize(q) {
            self.torsion.push(p.pow(e));
        }
        self.torsion.sort_unstable();
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut torsion = self.torsion.clone();
        torsion.extend_from_slice(&other.torsion);
        torsion.sort_unstable();
        Self {
            free_rank: self.free_rank + other.free_rank,
            torsion,
        }
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            n => parts.push(format!("Z^{n}")),
        }
        parts.extend(self.torsion.iter().map(|q| format!("Z/{q}")));
        f.write_str(&parts.join(" + "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct GradedAbelianGroup {
    degrees: [AbelianGroup; TOP_DEGREE + 1],
}

impl GradedAbelianGroup {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The homology of a point.
    pub fn point() -> Self {
        let mut g = Self::zero();
        g.degrees[0] = AbelianGroup::free(1);
        g
    }

    pub fn get(&self, degree: usize) -> &AbelianGroup {
        &self.degrees[degree]
    }

    pub fn set(&mut self, degree: usize, group: AbelianGroup) -> Result<(), HomologyError> {
        let slot = self
            .degrees
            .get_mut(degree)
            .ok_or(HomologyError::DegreeOutOfRange(degree))?;
        *slot = group;
        Ok(())
    }

    fn add_at(&mut self, degree: usize, group: &AbelianGroup) -> Result<(), HomologyError> {
        let slot = self
            .degrees
            .get_mut(degree)
            .ok_or(HomologyError::DegreeOutOfRange(degree))?;
        *slot = slot.direct_sum(group);
        Ok(())
    }

    pub fn degrees(&self) -> &[AbelianGroup] {
        &self.degrees
    }

    /// Alternating sum of free ranks.
    pub fn euler_characteristic(&self) -> i64 {
        self.degrees
            .iter()
            .enumerate()
            .map(|(i, g)| {
                if i % 2 == 0 {
                    g.free_rank as i64
                } else {
                    -(g.free_rank as i64)
                }
            })
            .sum()
    }
}

impl fmt::Display for GradedAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lines: Vec<String> = self
            .degrees
            .iter()
            .enumerate()
            .map(|(i, g)| format!("H{i} = {g}"))
            .collect();
        f.write_str(&lines.join("\n"))
    }
}

/// Homology forced by Poincare duality and universal coefficients:
/// `H1 = Z^m + T`, `H2 = Z^b2 + T`, `H3 = Z^m`, with `T` the torsion of `H1`.
pub fn homology_of_manifold(spec: &ManifoldSpec) -> GradedAbelianGroup {
    let m = spec.pi1.free_rank();
    let torsion: Vec<u64> = spec.pi1.cyclic_factors().iter().map(|c| c.order()).collect();
    let mut g = GradedAbelianGroup::point();
    g.degrees[1] = AbelianGroup::new(m, torsion.iter().copied());
    g.degrees[2] = AbelianGroup::new(spec.b2, torsion.iter().copied());
    g.degrees[3] = AbelianGroup::free(m);
    g.degrees[4] = AbelianGroup::free(1);
    g
}

/// Unreduced homology of a wedge term; reduced parts of summands add.
pub fn homology_of_term(term: &SpaceTerm) -> Result<GradedAbelianGroup, HomologyError> {
    let mut g = GradedAbelianGroup::point();
    for summand in term.summands() {
        match summand {
            SpaceTerm::Sphere(k) => g.add_at(k as usize, &AbelianGroup::free(1))?,
            SpaceTerm::Moore { dim, modulus } => {
                g.add_at(dim as usize - 1, &AbelianGroup::new(0, [modulus.value()]))?
            }
            SpaceTerm::SuspCp2 => {
                g.add_at(3, &AbelianGroup::free(1))?;
                g.add_at(5, &AbelianGroup::free(1))?;
            }
            SpaceTerm::Point | SpaceTerm::Wedge(_) => {
                let inner = homology_of_term(&summand)?;
                for (i, h) in inner.degrees.iter().enumerate() {
                    let reduced = if i == 0 {
                        AbelianGroup::free(h.free_rank.saturating_sub(1))
                    } else {
                        h.clone()
                    };
                    g.add_at(i, &reduced)?;
                }
            }
        }
    }
    Ok(g)
}

/// Suspension isomorphism: the reduced part moves up one degree.
pub fn suspend(g: &GradedAbelianGroup) -> Result<GradedAbelianGroup, HomologyError> {
    if !g.degrees[TOP_DEGREE].is_zero() {
        return Err(HomologyError::DegreeOutOfRange(TOP_DEGREE + 1));
    }
    let mut out = GradedAbelianGroup::point();
    let reduced0 = AbelianGroup {
        free_rank: g.degrees[0].free_rank.saturating_sub(1),
        torsion: g.degrees[0].torsion.clone(),
    };
    out.degrees[1] = reduced0;
    for i in 1..TOP_DEGREE {
        out.degrees[i + 1] = g.degrees[i].clone();
    }
    Ok(out)
}

/// Dense integer matrix, row-major, with arbitrary-precision entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows; all rows must have equal length.
    pub fn from_rows<T: Into<BigInt>>(rows: Vec<Vec<T>>) -> Result<Self, HomologyError> {
        let cols = rows.first().map_or(0, Vec::len);
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(HomologyError::RaggedMatrix(i, row.len(), cols));
            }
            data.extend(row.into_iter().map(Into::into));
        }
        Ok(Self {
            rows: nrows,
            cols,
            data,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product shape");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * &other[(k, j)];
                }
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    // row[target] += factor * row[source]
    fn add_row(&mut self, target: usize, source: usize, factor: &BigInt) {
        for j in 0..self.cols {
            let v = &self[(source, j)] * factor;
            self[(target, j)] += v;
        }
    }

    // col[target] += factor * col[source]
    fn add_col(&mut self, target: usize, source: usize, factor: &BigInt) {
        for i in 0..self.rows {
            let v = &self[(i, source)] * factor;
            self[(i, target)] += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -&self[(i, j)];
            self[(i, j)] = v;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.rows)
            .map(|i| {
                let row: Vec<String> = (0..self.cols).map(|j| self[(i, j)].to_string()).collect();
                format!("[{}]", row.join(","))
            })
            .collect();
        write!(f, "[{}]", rows.join(","))
    }
}

/// `left * input * right = diagonal`, with `left` and `right` unimodular and
/// the nonzero diagonal entries forming a divisibility chain.
#[derive(Debug, Clone)]
pub struct SmithDecomposition {
    pub left: IntMatrix,
    pub diagonal: IntMatrix,
    pub right: IntMatrix,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithNormalForm {
    /// Positive invariant factors `d1 | d2 | ...`, one per unit of rank.
    pub invariant_factors: Vec<BigInt>,
    pub rank: usize,
}

pub fn smith_decomposition(mat: &IntMatrix) -> SmithDecomposition {
    let (m, n) = (mat.rows, mat.cols);
    let mut a = mat.clone();
    let mut left = IntMatrix::identity(m);
    let mut right = IntMatrix::identity(n);

    for t in 0..m.min(n) {
        // Smallest nonzero entry of the trailing block becomes the pivot.
        let pivot = (t..m)
            .flat_map(|i| (t..n).map(move |j| (i, j)))
            .filter(|&(i, j)| !a[(i, j)].is_zero())
            .min_by(|&x, &y| a[x].abs().cmp(&a[y].abs()));
        let Some((pi, pj)) = pivot else { break };
        a.swap_rows(t, pi);
        left.swap_rows(t, pi);
        a.swap_cols(t, pj);
        right.swap_cols(t, pj);

        loop {
            let mut changed = false;
            for i in t + 1..m {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let q = -a[(i, t)].div_floor(&a[(t, t)]);
                a.add_row(i, t, &q);
                left.add_row(i, t, &q);
                if !a[(i, t)].is_zero() {
                    a.swap_rows(t, i);
                    left.swap_rows(t, i);
                    changed = true;
                }
            }
            for j in t + 1..n {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let q = -a[(t, j)].div_floor(&a[(t, t)]);
                a.add_col(j, t, &q);
                right.add_col(j, t, &q);
                if !a[(t, j)].is_zero() {
                    a.swap_cols(t, j);
                    right.swap_cols(t, j);
                    changed = true;
                }
            }
            if changed {
                continue;
            }
            // Row and column are clear; enforce divisibility of the block.
            let offender = (t + 1..m)
                .flat_map(|i| (t + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| !a[(i, j)].is_multiple_of(&a[(t, t)]));
            match offender {
                Some((i, _)) => {
                    let one = BigInt::one();
                    a.add_row(t, i, &one);
                    left.add_row(t, i, &one);
                }
                None => break,
            }
        }
        if a[(t, t)].is_negative() {
            a.negate_row(t);
            left.negate_row(t);
        }
    }
    SmithDecomposition {
        left,
        diagonal: a,
        right,
    }
}

pub fn smith_normal_form(mat: &IntMatrix) -> SmithNormalForm {
    let d = smith_decomposition(mat).diagonal;
    let invariant_factors: Vec<BigInt> = (0..d.rows.min(d.cols))
        .map(|i| d[(i, i)].clone())
        .take_while(|v| !v.is_zero())
        .collect();
    SmithNormalForm {
        rank: invariant_factors.len(),
        invariant_factors,
    }
}

/// Homology of `... -> C2 -> C1 -> C0 -> 0`, where `boundaries[k]` is the
/// boundary map from `C_{k+1}` to `C_k` (rows index `C_k`, columns `C_{k+1}`).
pub fn chain_homology(boundaries: &[IntMatrix]) -> Result<GradedAbelianGroup, HomologyError> {
    if boundaries.len() > TOP_DEGREE {
        return Err(HomologyError::DegreeOutOfRange(boundaries.len()));
    }
    for k in 1..boundaries.len() {
        if boundaries[k - 1].cols != boundaries[k].rows {
            return Err(HomologyError::DimensionMismatch(k, k + 1));
        }
        if !boundaries[k - 1].mul(&boundaries[k]).is_zero() {
            return Err(HomologyError::NotAChainComplex(k, k + 1));
        }
    }
    let cells: Vec<usize> = match boundaries.first() {
        None => Vec::new(),
        Some(first) => std::iter::once(first.rows)
            .chain(boundaries.iter().map(|b| b.cols))
            .collect(),
    };
    let snfs: Vec<SmithNormalForm> = boundaries.iter().map(smith_normal_form).collect();

    let mut out = GradedAbelianGroup::zero();
    for (i, &dim) in cells.iter().enumerate() {
        // boundary out of C_i is snfs[i - 1]; boundary into C_i is snfs[i].
        let outgoing = if i == 0 { 0 } else { snfs[i - 1].rank };
        let incoming = snfs.get(i);
        let kernel = dim - outgoing;
        let image = incoming.map_or(0, |s| s.rank);
        let mut group = AbelianGroup::free((kernel - image) as u32);
        for factor in incoming.into_iter().flat_map(|s| &s.invariant_factors) {
            let q = factor
                .to_u64()
                .ok_or_else(|| HomologyError::TorsionTooLarge(factor.clone()))?;
            group.add_cyclic(q);
        }
        out.set(i, group)?;
    }
    Ok(out)
}
