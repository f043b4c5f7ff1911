//! Lattices, motifs and periodic point sets, plus the cell-shape scalars
//! that bound the search for the bridge length.
//!
//! A periodic point set is stored as a lattice basis (Cartesian vectors) and
//! a motif of points given in fractional coordinates of that basis. All
//! types are immutable once built.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::GeometryError;

/// Largest supported dimension.
pub const MAX_DIM: usize = 8;

/// Default tolerance (fractional, wrap-aware L∞) below which two motif points
/// are considered to coincide.
pub const MOTIF_DEDUP_TOL: f64 = 1e-8;

/// Relative volume floor: `|det| < DEGENERACY_FLOOR * b^n` is singular.
pub const DEGENERACY_FLOOR: f64 = 1e-12;

/// A basis `v_1, ..., v_n` of ℝⁿ generating a lattice and its unit cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LatticeBasis {
    /// Row `i` is the Cartesian vector `v_i`.
    vectors: Vec<Vec<f64>>,
}

impl LatticeBasis {
    /// Builds a basis from `n` Cartesian vectors of length `n`.
    pub fn new(vectors: Vec<Vec<f64>>) -> Result<Self, GeometryError> {
        let n = vectors.len();
        if n == 0 || n > MAX_DIM {
            return Err(GeometryError::UnsupportedDimension(n));
        }
        for (i, v) in vectors.iter().enumerate() {
            if v.len() != n {
                return Err(GeometryError::DimensionMismatch {
                    expected: n,
                    found: v.len(),
                    what: format!("basis vector {i}"),
                });
            }
            if v.iter().any(|x| !x.is_finite()) {
                return Err(GeometryError::NonFinite(format!("basis vector {i}")));
            }
        }
        let basis = LatticeBasis { vectors };
        let b = basis.lengths().into_iter().fold(0.0, f64::max);
        let det = basis.column_matrix().determinant().abs();
        if det.is_nan() || det < DEGENERACY_FLOOR * b.powi(n as i32) || b == 0.0 {
            return Err(GeometryError::DegenerateCell { volume: det });
        }
        Ok(basis)
    }

    pub fn identity(dim: usize) -> Result<Self, GeometryError> {
        Self::new(
            (0..dim)
                .map(|i| (0..dim).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[Vec<f64>] {
        &self.vectors
    }

    /// Matrix whose columns are the basis vectors, so that
    /// `cartesian = M * fractional`.
    pub fn column_matrix(&self) -> DMatrix<f64> {
        let n = self.dim();
        DMatrix::from_fn(n, n, |r, c| self.vectors[c][r])
    }

    pub fn lengths(&self) -> Vec<f64> {
        self.vectors.iter().map(|v| norm(v)).collect()
    }

    pub fn volume(&self) -> f64 {
        self.column_matrix().determinant().abs()
    }

    /// `(n-1)`-volume of the facet spanned by all basis vectors except `v_skip`.
    pub fn facet_volume(&self, skip: usize) -> f64 {
        let rest: Vec<&Vec<f64>> = self
            .vectors
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != skip)
            .map(|(_, v)| v)
            .collect();
        let k = rest.len();
        // The empty Gram determinant is 1, so a 1-dimensional cell has facet
        // volume 1 and height |v_1|.
        let gram = DMatrix::from_fn(k, k, |i, j| dot(rest[i], rest[j]));
        gram.determinant().max(0.0).sqrt()
    }

    /// Distance between the two facets of the cell not containing `v_i`,
    /// for every `i`.
    pub fn heights(&self) -> Vec<f64> {
        let vol = self.volume();
        (0..self.dim()).map(|i| vol / self.facet_volume(i)).collect()
    }

    /// Maps fractional coordinates to Cartesian ones.
    pub fn to_cartesian(&self, fractional: &[f64]) -> Vec<f64> {
        let n = self.dim();
        let mut out = vec![0.0; n];
        for (coef, v) in fractional.iter().zip(&self.vectors) {
            for (o, x) in out.iter_mut().zip(v) {
                *o += coef * x;
            }
        }
        out
    }

    /// Maps Cartesian coordinates to fractional ones.
    pub fn to_fractional(&self, cartesian: &[f64]) -> Vec<f64> {
        let m = self.column_matrix();
        let inv = m
            .try_inverse()
            .expect("basis was validated as nonsingular on construction");
        (inv * DVector::from_column_slice(cartesian))
            .iter()
            .copied()
            .collect()
    }

    pub fn scaled(&self, c: f64) -> LatticeBasis {
        LatticeBasis {
            vectors: self
                .vectors
                .iter()
                .map(|v| v.iter().map(|x| x * c).collect())
                .collect(),
        }
    }
}

/// Finite set of points of the unit cell, in fractional coordinates `[0, 1)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Motif {
    points: Vec<Vec<f64>>,
}

impl Motif {
    pub fn new(points: Vec<Vec<f64>>, dim: usize) -> Result<Self, GeometryError> {
        Self::with_tolerance(points, dim, MOTIF_DEDUP_TOL)
    }

    /// Canonicalizes every coordinate into `[0, 1)` and rejects points that
    /// coincide (wrap-aware) within `tol`.
    pub fn with_tolerance(
        points: Vec<Vec<f64>>,
        dim: usize,
        tol: f64,
    ) -> Result<Self, GeometryError> {
        if points.is_empty() {
            return Err(GeometryError::EmptyMotif);
        }
        let mut canonical = Vec::with_capacity(points.len());
        for (i, p) in points.into_iter().enumerate() {
            if p.len() != dim {
                return Err(GeometryError::DimensionMismatch {
                    expected: dim,
                    found: p.len(),
                    what: format!("motif point {i}"),
                });
            }
            if p.iter().any(|x| !x.is_finite()) {
                return Err(GeometryError::NonFinite(format!("motif point {i}")));
            }
            let p: Vec<f64> = p.into_iter().map(wrap_unit).collect();
            if let Some(j) = canonical
                .iter()
                .position(|q: &Vec<f64>| wrapped_distance(q, &p) < tol)
            {
                return Err(GeometryError::DuplicatePoint { first: j, second: i });
            }
            canonical.push(p);
        }
        Ok(Motif { points: canonical })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }
}

/// The periodic point set `Λ + M`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PeriodicSet {
    basis: LatticeBasis,
    motif: Motif,
}

impl PeriodicSet {
    pub fn new(basis: LatticeBasis, motif: Motif) -> Result<Self, GeometryError> {
        if let Some(p) = motif.points().first() {
            if p.len() != basis.dim() {
                return Err(GeometryError::DimensionMismatch {
                    expected: basis.dim(),
                    found: p.len(),
                    what: "motif".into(),
                });
            }
        }
        Ok(PeriodicSet { basis, motif })
    }

    /// Convenience constructor from raw basis rows and fractional points.
    pub fn from_parts(
        basis: Vec<Vec<f64>>,
        fractional: Vec<Vec<f64>>,
    ) -> Result<Self, GeometryError> {
        let basis = LatticeBasis::new(basis)?;
        let motif = Motif::new(fractional, basis.dim())?;
        Self::new(basis, motif)
    }

    /// The integer lattice ℤⁿ.
    pub fn integer_lattice(dim: usize) -> Result<Self, GeometryError> {
        Self::from_parts(LatticeBasis::identity(dim)?.vectors, vec![vec![0.0; dim]])
    }

    pub fn basis(&self) -> &LatticeBasis {
        &self.basis
    }

    pub fn motif(&self) -> &Motif {
        &self.motif
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn motif_len(&self) -> usize {
        self.motif.len()
    }

    /// Cartesian positions of the motif points inside the unit cell.
    pub fn motif_cartesian(&self) -> Vec<Vec<f64>> {
        self.motif
            .points()
            .iter()
            .map(|p| self.basis.to_cartesian(p))
            .collect()
    }

    /// Cartesian position of motif point `index` translated by the lattice
    /// vector with integer coordinates `translation`.
    pub fn cartesian_position(
        &self,
        index: usize,
        translation: &[i64],
    ) -> Result<Vec<f64>, GeometryError> {
        let m = self.motif_len();
        let p = self
            .motif
            .points()
            .get(index)
            .ok_or(GeometryError::IndexOutOfRange { index, len: m })?;
        if translation.len() != self.dim() {
            return Err(GeometryError::DimensionMismatch {
                expected: self.dim(),
                found: translation.len(),
                what: "translation".into(),
            });
        }
        let frac: Vec<f64> = p
            .iter()
            .zip(translation)
            .map(|(x, t)| x + *t as f64)
            .collect();
        Ok(self.basis.to_cartesian(&frac))
    }

    /// Multiplies every basis vector by `c`, keeping fractional coordinates.
    pub fn scale(&self, c: f64) -> Result<PeriodicSet, GeometryError> {
        if !c.is_finite() || c <= 0.0 {
            return Err(GeometryError::InvalidScale(c));
        }
        Ok(PeriodicSet {
            basis: self.basis.scaled(c),
            motif: self.motif.clone(),
        })
    }

    /// Replaces the basis by `M·v_i` for a linear map `M` given row-major.
    /// Fractional coordinates are unchanged.
    pub fn transform(&self, map: &[Vec<f64>]) -> Result<PeriodicSet, GeometryError> {
        let n = self.dim();
        let vectors = self
            .basis
            .vectors()
            .iter()
            .map(|v| (0..n).map(|r| dot(&map[r], v)).collect())
            .collect();
        Ok(PeriodicSet {
            basis: LatticeBasis::new(vectors)?,
            motif: self.motif.clone(),
        })
    }

    /// Same point set described by the cell with basis `k·v_i` and
    /// `kⁿ·m` motif points.
    pub fn supercell(&self, k: usize) -> Result<PeriodicSet, GeometryError> {
        assert!(k >= 1, "supercell factor must be positive");
        let n = self.dim();
        let kf = k as f64;
        let mut points = Vec::with_capacity(self.motif_len() * k.pow(n as u32));
        for t in cube_indices(n, k) {
            for p in self.motif.points() {
                points.push(
                    p.iter()
                        .zip(&t)
                        .map(|(x, ti)| (x + *ti as f64) / kf)
                        .collect(),
                );
            }
        }
        let basis = self.basis.scaled(kf);
        let motif = Motif::with_tolerance(points, n, MOTIF_DEDUP_TOL / kf)?;
        Ok(PeriodicSet { basis, motif })
    }

    /// Cartesian points of the extended motif `S ∩ U_k`, where `U_k` is the
    /// cell spanned by `k·v_1, ..., k·v_n`.
    pub fn extended_motif(&self, k: usize) -> Vec<Vec<f64>> {
        let n = self.dim();
        let mut out = Vec::new();
        for t in cube_indices(n, k) {
            for i in 0..self.motif_len() {
                out.push(
                    self.cartesian_position(i, &t)
                        .expect("index and translation are in range"),
                );
            }
        }
        out
    }
}

/// Scalars derived from the unit cell.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CellMetrics {
    /// Longest basis vector.
    pub b: f64,
    /// Longest cell diagonal.
    pub d: f64,
    pub vol: f64,
    /// Shortest height.
    pub h: f64,
    /// Upper bound `max(b, d/2)` on the bridge length.
    pub r_u: f64,
    /// `r_u / h`.
    pub aspect: f64,
}

impl CellMetrics {
    /// Number of shells the edge stream may need: `⌈aspect⌉`.
    pub fn aspect_ceil(&self) -> usize {
        // Guard against 2.0000000000000004 turning into 3.
        let a = self.aspect;
        let r = a.round();
        if (a - r).abs() <= 1e-9 * a.max(1.0) {
            r as usize
        } else {
            a.ceil() as usize
        }
    }
}

pub fn cell_metrics(basis: &LatticeBasis) -> CellMetrics {
    let n = basis.dim();
    let b = basis.lengths().into_iter().fold(0.0, f64::max);
    // Diagonals Σ σ_i v_i with σ_1 = +1 fixed.
    let mut d: f64 = 0.0;
    for mask in 0u32..(1 << (n - 1)) {
        let mut diag = basis.vectors()[0].clone();
        for i in 1..n {
            let sign = if mask & (1 << (i - 1)) != 0 { -1.0 } else { 1.0 };
            for (x, y) in diag.iter_mut().zip(&basis.vectors()[i]) {
                *x += sign * y;
            }
        }
        d = d.max(norm(&diag));
    }
    let vol = basis.volume();
    let max_facet = (0..n).map(|i| basis.facet_volume(i)).fold(0.0, f64::max);
    let h = vol / max_facet;
    let r_u = b.max(d / 2.0);
    CellMetrics {
        b,
        d,
        vol,
        h,
        r_u,
        aspect: r_u / h,
    }
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

pub(crate) fn distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

/// Reduces `x` into `[0, 1)`.
pub fn wrap_unit(x: f64) -> f64 {
    let w = x - x.floor();
    // -1e-18 - floor(-1e-18) rounds to exactly 1.0
    if w >= 1.0 {
        0.0
    } else {
        w
    }
}

/// L∞ distance between fractional points on the torus.
pub fn wrapped_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| {
            let d = x - y;
            (d - d.round()).abs()
        })
        .fold(0.0, f64::max)
}

/// All integer vectors in `[0, k)^n`, lexicographic.
pub(crate) fn cube_indices(n: usize, k: usize) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<i64>| {
                (0..k as i64).map(move |c| {
                    let mut v = prefix.clone();
                    v.push(c);
                    v
                })
            })
            .collect();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() <= 1e-12 * a.abs().max(b.abs()).max(1.0)
    }

    #[test]
    fn cube_metrics() {
        let m = cell_metrics(&LatticeBasis::identity(3).unwrap());
        assert!(close(m.b, 1.0));
        assert!(close(m.d, 3f64.sqrt()));
        assert!(close(m.vol, 1.0));
        assert!(close(m.h, 1.0));
        assert!(close(m.r_u, 1.0));
        assert!(close(m.aspect, 1.0));
    }

    #[test]
    fn rectangle_metrics() {
        let basis = LatticeBasis::new(vec![vec![1.0, 0.0], vec![0.0, 2.0]]).unwrap();
        let m = cell_metrics(&basis);
        assert!(close(m.b, 2.0));
        assert!(close(m.d, 5f64.sqrt()));
        assert!(close(m.vol, 2.0));
        assert!(close(m.h, 1.0));
        assert!(close(m.r_u, 2.0));
        assert!(close(m.aspect, 2.0));
    }

    #[test]
    fn sheared_square_height() {
        let basis = LatticeBasis::new(vec![vec![1.0, 0.0], vec![1.0, 1.0]]).unwrap();
        assert!(close(basis.volume(), 1.0));
        assert!(close(basis.facet_volume(0), 2f64.sqrt()));
        let m = cell_metrics(&basis);
        assert!(close(m.h, 1.0 / 2f64.sqrt()));
        // Diagonals (2,1) and (0,-1).
        assert!(close(m.d, 5f64.sqrt()));
    }

    #[test]
    fn one_dimensional_cell() {
        let basis = LatticeBasis::new(vec![vec![3.0]]).unwrap();
        let m = cell_metrics(&basis);
        assert!(close(m.h, 3.0));
        assert!(close(m.d, 3.0));
        assert!(close(m.r_u, 3.0));
    }

    #[test]
    fn singular_basis_is_rejected() {
        let err = LatticeBasis::new(vec![vec![1.0, 2.0], vec![2.0, 4.0]]).unwrap_err();
        assert!(matches!(err, GeometryError::DegenerateCell { .. }));
        let err = LatticeBasis::new(vec![vec![1.0, 0.0], vec![0.0, 1e-13]]).unwrap_err();
        assert!(matches!(err, GeometryError::DegenerateCell { .. }));
        assert!(LatticeBasis::new(vec![]).is_err());
        assert!(LatticeBasis::new(vec![vec![1.0, 0.0]]).is_err());
    }

    #[test]
    fn motif_is_canonicalized_and_deduplicated() {
        let m = Motif::new(vec![vec![-0.25, 1.5], vec![0.0, 0.0]], 2).unwrap();
        assert_eq!(m.points()[0], vec![0.75, 0.5]);
        assert_eq!(wrap_unit(-1e-18), 0.0);
        let err = Motif::new(vec![vec![0.0, 0.0], vec![1.0, 0.999_999_999_999]], 2).unwrap_err();
        assert!(matches!(err, GeometryError::DuplicatePoint { first: 0, second: 1 }));
        assert!(matches!(Motif::new(vec![], 2), Err(GeometryError::EmptyMotif)));
    }

    #[test]
    fn positions() {
        let z2 = PeriodicSet::integer_lattice(2).unwrap();
        assert_eq!(z2.cartesian_position(0, &[1, 1]).unwrap(), vec![1.0, 1.0]);

        let bcc = PeriodicSet::from_parts(
            LatticeBasis::identity(3).unwrap().vectors().to_vec(),
            vec![vec![0.0; 3], vec![0.5; 3]],
        )
        .unwrap();
        assert_eq!(bcc.cartesian_position(1, &[0, 0, 0]).unwrap(), vec![0.5; 3]);

        let s = PeriodicSet::from_parts(
            vec![vec![2.0, 0.0], vec![0.0, 2.0]],
            vec![vec![0.25, 0.75]],
        )
        .unwrap();
        assert_eq!(s.cartesian_position(0, &[-1, 0]).unwrap(), vec![-1.5, 1.5]);

        assert!(matches!(
            s.cartesian_position(1, &[0, 0]),
            Err(GeometryError::IndexOutOfRange { index: 1, len: 1 })
        ));
    }

    #[test]
    fn scaling() {
        let z2 = PeriodicSet::integer_lattice(2).unwrap();
        assert_eq!(z2.scale(1.0).unwrap(), z2);
        let doubled = z2.scale(2.0).unwrap();
        assert_eq!(
            doubled.basis().vectors(),
            &[vec![2.0, 0.0], vec![0.0, 2.0]]
        );
        assert!(matches!(z2.scale(0.0), Err(GeometryError::InvalidScale(_))));
        assert!(matches!(z2.scale(-1.0), Err(GeometryError::InvalidScale(_))));
    }

    #[test]
    fn supercell_and_extended_motif() {
        let z2 = PeriodicSet::integer_lattice(2).unwrap();
        let big = z2.supercell(2).unwrap();
        assert_eq!(big.motif_len(), 4);
        assert_eq!(big.basis().vectors()[0], vec![2.0, 0.0]);
        assert_eq!(z2.extended_motif(3).len(), 9);
    }

    #[test]
    fn aspect_ceil_tolerates_rounding() {
        let mut m = cell_metrics(&LatticeBasis::identity(2).unwrap());
        m.aspect = 2.0000000000000004;
        assert_eq!(m.aspect_ceil(), 2);
        m.aspect = 2.1;
        assert_eq!(m.aspect_ceil(), 3);
    }
}
