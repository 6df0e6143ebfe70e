//! Walsh-Hadamard spectra, duals, Rayleigh quotients and distance to the dual.
//!
//! Every transform runs the same in-place butterfly over the standard dot
//! product. The trace form `Tr(x x') + Tr(y y')` on GF(2^k)^2 equals
//! `coords(p) . G coords(q)` for the block Gram matrix `G`, so its spectrum
//! is the standard one read at `G u`.

use serde::Serialize;

use crate::boolfun::TruthTable;
use crate::error::{Error, Result};
use crate::field::{invert_matrix, FieldCtx};

/// Inner product used to define the spectrum.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum Pairing {
    /// `u . x = sum u_i x_i`.
    #[default]
    Standard,
    /// `Tr(x x') + Tr(y y')` on GF(2^k) x GF(2^k), for `n = 2k`.
    TraceForm(FieldCtx),
}

impl Pairing {
    pub fn check(&self, n: u32) -> Result<()> {
        match self {
            Pairing::Standard => Ok(()),
            Pairing::TraceForm(ctx) if 2 * ctx.k() == n => Ok(()),
            Pairing::TraceForm(ctx) => Err(Error::PairingMismatch { expected: 2 * ctx.k(), actual: n }),
        }
    }

    /// The vector `v` with `<u, x> = v . x` for all `x`.
    #[inline]
    pub fn standard_index(&self, u: u32) -> u32 {
        match self {
            Pairing::Standard => u,
            Pairing::TraceForm(ctx) => ctx.gram_index_map(u),
        }
    }

    #[inline]
    pub fn dot(&self, u: u32, x: u32) -> bool {
        (self.standard_index(u) & x).count_ones() & 1 == 1
    }

    /// `standard_index` tabulated over all `2^n` points.
    pub fn index_table(&self, n: u32) -> Result<Vec<u32>> {
        self.check(n)?;
        Ok((0..1u32 << n).map(|u| self.standard_index(u)).collect())
    }

    pub fn name(&self) -> &'static str {
        match self {
            Pairing::Standard => "standard",
            Pairing::TraceForm(_) => "trace",
        }
    }
}

/// The full Walsh-Hadamard spectrum of a function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WalshSpectrum {
    n: u32,
    values: Vec<i64>,
    pairing: Pairing,
}

impl WalshSpectrum {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn pairing(&self) -> &Pairing {
        &self.pairing
    }

    #[inline]
    pub fn get(&self, u: u32) -> i64 {
        self.values[u as usize]
    }

    pub fn max_abs(&self) -> i64 {
        self.values.iter().map(|v| v.abs()).max().unwrap_or(0)
    }

    pub fn sum_of_squares(&self) -> i128 {
        self.values.iter().map(|&v| (v as i128) * (v as i128)).sum()
    }

    /// `sum W(u)^2 = 2^(2n)`.
    pub fn satisfies_parseval(&self) -> bool {
        self.sum_of_squares() == 1i128 << (2 * self.n)
    }

    /// First point where `|W(u)| != 2^(n/2)`, if any.
    pub fn non_flat_point(&self) -> Option<u32> {
        if self.n % 2 == 1 {
            return Some(0);
        }
        let flat = 1i64 << (self.n / 2);
        self.values.iter().position(|v| v.abs() != flat).map(|p| p as u32)
    }

    pub fn is_flat(&self) -> bool {
        self.non_flat_point().is_none()
    }
}

/// In-place unnormalized Walsh-Hadamard butterfly on a signed vector.
pub fn fwht_in_place(values: &mut [i64]) {
    let len = values.len();
    debug_assert!(len.is_power_of_two());
    let mut h = 1;
    while h < len {
        for base in (0..len).step_by(2 * h) {
            let (lo, hi) = values[base..base + 2 * h].split_at_mut(h);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (s, d) = (*a + *b, *a - *b);
                *a = s;
                *b = d;
            }
        }
        h *= 2;
    }
}

/// `W_f(u) = sum_x (-1)^(f(x) + <u, x>)` for all `u`.
pub fn wht(f: &TruthTable, pairing: &Pairing) -> Result<WalshSpectrum> {
    pairing.check(f.n())?;
    let mut values = f.signs();
    fwht_in_place(&mut values);
    if let Pairing::TraceForm(ctx) = pairing {
        values = (0..values.len() as u32).map(|u| values[ctx.gram_index_map(u) as usize]).collect();
    }
    Ok(WalshSpectrum { n: f.n(), values, pairing: pairing.clone() })
}

/// Which half of F_2^n a restricted transform sums over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightParity {
    Even,
    Odd,
}

/// `sum_{x in E} (-1)^(f(x) + u . x)` where `E` is the set of even-weight or
/// odd-weight points.
pub fn wht_restricted(f: &TruthTable, u: u32, subset: WeightParity) -> i64 {
    let want = matches!(subset, WeightParity::Odd) as u32;
    (0..f.len() as u32)
        .filter(|x| x.count_ones() & 1 == want)
        .map(|x| if f.get(x) ^ ((u & x).count_ones() & 1 == 1) { -1 } else { 1 })
        .sum()
}

/// `2^(n-1) - max |W_f| / 2`.
pub fn nonlinearity(f: &TruthTable) -> u64 {
    let spec = wht(f, &Pairing::Standard).expect("standard pairing fits every n");
    (1u64 << (f.n() - 1)) - (spec.max_abs() as u64) / 2
}

/// Flat spectrum at `2^(n/2)`; bentness does not depend on the pairing.
pub fn is_bent(f: &TruthTable) -> bool {
    f.n().is_multiple_of(2) && wht(f, &Pairing::Standard).map(|s| s.is_flat()).unwrap_or(false)
}

fn dual_from_spectrum(spec: &WalshSpectrum) -> Result<TruthTable> {
    if let Some(point) = spec.non_flat_point() {
        return Err(Error::NotBent { point, value: spec.get(point) });
    }
    TruthTable::from_fn(spec.n, |u| spec.get(u) < 0)
}

/// The dual `f~` with `W_f(u) = (-1)^f~(u) 2^(n/2)`.
pub fn dual(f: &TruthTable, pairing: &Pairing) -> Result<TruthTable> {
    dual_from_spectrum(&wht(f, pairing)?)
}

/// Rayleigh quotient `S_f` and, for bent `f`, its normalized form `N_f`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Rayleigh {
    #[serde(rename = "S")]
    pub s: i64,
    #[serde(rename = "N")]
    pub n: i64,
}

/// `S_f = sum_x (-1)^f(x) W_f(x)`, defined for any `f`.
pub fn rayleigh_quotient(f: &TruthTable, pairing: &Pairing) -> Result<i64> {
    let spec = wht(f, pairing)?;
    Ok(f.signs().iter().zip(spec.values()).map(|(s, w)| s * w).sum())
}

/// `S_f` and `N_f = 2^(-n/2) S_f`; errors unless `f` is bent.
pub fn rayleigh(f: &TruthTable, pairing: &Pairing) -> Result<Rayleigh> {
    let spec = wht(f, pairing)?;
    if let Some(point) = spec.non_flat_point() {
        return Err(Error::NotBent { point, value: spec.get(point) });
    }
    let s: i64 = f.signs().iter().zip(spec.values()).map(|(s, w)| s * w).sum();
    Ok(Rayleigh { s, n: s >> (f.n() / 2) })
}

pub fn dist(f: &TruthTable, g: &TruthTable) -> Result<u64> {
    f.hamming_distance(g)
}

/// `dist(f, f~)` via `2^(n-1) - N_f / 2`. Debug builds also compare against
/// the direct Hamming distance.
pub fn dist_to_dual(f: &TruthTable, pairing: &Pairing) -> Result<u64> {
    let r = rayleigh(f, pairing)?;
    let spectral = dist_from_nf(f.n(), r.n);
    if cfg!(debug_assertions) {
        let direct = f.hamming_distance(&dual(f, pairing)?)?;
        debug_assert_eq!(direct, spectral, "spectral and direct distance disagree");
    }
    Ok(spectral)
}

/// Both routes to `dist(f, f~)`, as `(spectral, direct)`. Errors if they differ.
pub fn dist_to_dual_verified(f: &TruthTable, pairing: &Pairing) -> Result<(u64, u64)> {
    let r = rayleigh(f, pairing)?;
    let spectral = dist_from_nf(f.n(), r.n);
    let direct = f.hamming_distance(&dual(f, pairing)?)?;
    if spectral != direct {
        return Err(Error::Inconsistent(format!("dist to dual: spectral {spectral} vs direct {direct} for {f}")));
    }
    Ok((spectral, direct))
}

/// `2^(n-1) - N / 2`.
pub fn dist_from_nf(n: u32, nf: i64) -> u64 {
    ((1i64 << (n - 1)) - nf / 2) as u64
}

/// `2^n - 2 dist`.
pub fn nf_from_dist(n: u32, dist: u64) -> i64 {
    (1i64 << n) - 2 * dist as i64
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DualityTag {
    SelfDual,
    AntiSelfDual,
    Neither,
}

/// Membership of a bent function in the class `{f : dist(f, f~) = i}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DualityClass {
    pub tag: DualityTag,
    pub dist_to_dual: u64,
}

impl DualityClass {
    pub fn from_dist(n: u32, dist: u64) -> Self {
        let tag = if dist == 0 {
            DualityTag::SelfDual
        } else if dist == 1 << n {
            DualityTag::AntiSelfDual
        } else {
            DualityTag::Neither
        };
        DualityClass { tag, dist_to_dual: dist }
    }
}

pub fn duality_class(f: &TruthTable, pairing: &Pairing) -> Result<DualityClass> {
    Ok(DualityClass::from_dist(f.n(), dist_to_dual(f, pairing)?))
}

/// An `n x n` matrix over F_2. Row `i` is packed with bit `j` = `A[i][j]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BinaryMatrix {
    rows: Vec<u32>,
}

impl BinaryMatrix {
    pub fn from_rows(rows: Vec<u32>) -> Self {
        BinaryMatrix { rows }
    }

    /// Rows written as `"1110"`, leftmost character is column 1.
    pub fn from_row_strings(rows: &[&str]) -> Self {
        let rows = rows
            .iter()
            .map(|r| r.chars().enumerate().filter(|(_, c)| *c == '1').fold(0, |acc, (j, _)| acc | 1 << j))
            .collect();
        BinaryMatrix { rows }
    }

    pub fn identity(n: u32) -> Self {
        BinaryMatrix { rows: (0..n).map(|i| 1 << i).collect() }
    }

    /// Matrix with `P[i][perm[i]] = 1`.
    pub fn permutation(perm: &[u32]) -> Self {
        BinaryMatrix { rows: perm.iter().map(|&j| 1 << j).collect() }
    }

    pub fn dim(&self) -> u32 {
        self.rows.len() as u32
    }

    pub fn rows(&self) -> &[u32] {
        &self.rows
    }

    pub fn get(&self, i: u32, j: u32) -> bool {
        self.rows[i as usize] >> j & 1 == 1
    }

    pub fn transpose(&self) -> Self {
        let n = self.dim();
        BinaryMatrix {
            rows: (0..n).map(|j| (0..n).filter(|&i| self.get(i, j)).fold(0, |acc, i| acc | 1 << i)).collect(),
        }
    }

    /// Row vector times matrix: `x A`.
    #[inline]
    pub fn apply_row(&self, x: u32) -> u32 {
        self.rows.iter().enumerate().filter(|(i, _)| x >> i & 1 == 1).fold(0, |acc, (_, &r)| acc ^ r)
    }

    pub fn mul(&self, other: &Self) -> Self {
        BinaryMatrix { rows: self.rows.iter().map(|&r| other.apply_row(r)).collect() }
    }

    /// `diag(self, other)`.
    pub fn block_diag(&self, other: &Self) -> Self {
        let shift = self.dim();
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().map(|r| r << shift));
        BinaryMatrix { rows }
    }

    pub fn inverse(&self) -> Option<Self> {
        // invert_matrix treats bit j of row i as entry (i, j) as well
        invert_matrix(&self.rows, self.dim()).map(|rows| BinaryMatrix { rows })
    }

    pub fn is_invertible(&self) -> bool {
        self.inverse().is_some()
    }

    /// `A A^T = I`.
    pub fn is_orthogonal(&self) -> bool {
        self.mul(&self.transpose()) == BinaryMatrix::identity(self.dim())
    }
}

/// `g(x) = f(x A + b)` for invertible `A`.
pub fn orthogonal_transform(f: &TruthTable, a: &BinaryMatrix, b: u32) -> Result<TruthTable> {
    if a.dim() != f.n() {
        return Err(Error::SizeMismatch { left: f.n(), right: a.dim() });
    }
    if b >> f.n() != 0 {
        return Err(Error::PointOutOfRange { point: b, n: f.n() });
    }
    if !a.is_invertible() {
        return Err(Error::SingularMatrix);
    }
    TruthTable::from_fn(f.n(), |x| f.get(a.apply_row(x) ^ b))
}

/// The orthogonal 4x4 matrix used in the affine-invariance example.
pub fn example_orthogonal_matrix() -> BinaryMatrix {
    BinaryMatrix::from_row_strings(&["1110", "1101", "1011", "0111"])
}

/// The non-orthogonal lower-triangular companion example.
pub fn example_lower_triangular_matrix() -> BinaryMatrix {
    BinaryMatrix::from_row_strings(&["1000", "1100", "1110", "1111"])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolfun::{mm_bent, symmetric_bent, Permutation};

    fn direct_wht(f: &TruthTable, u: u32) -> i64 {
        (0..f.len() as u32).map(|x| if f.get(x) ^ ((u & x).count_ones() & 1 == 1) { -1 } else { 1 }).sum()
    }

    fn x1x3_x2x4() -> TruthTable {
        TruthTable::from_fn(4, |p| ((p & 1 != 0) && (p & 4 != 0)) ^ ((p & 2 != 0) && (p & 8 != 0))).unwrap()
    }

    #[test]
    fn wht_examples() {
        let zero = TruthTable::zeros(4).unwrap();
        let s = wht(&zero, &Pairing::Standard).unwrap();
        assert_eq!(s.get(0), 16);
        assert!(s.values()[1..].iter().all(|&v| v == 0));

        let x1x2 = TruthTable::from_fn(2, |p| p == 3).unwrap();
        let s = wht(&x1x2, &Pairing::Standard).unwrap();
        assert_eq!(s.values(), &[2, 2, 2, -2]);
        for u in 0..4 {
            assert_eq!(s.get(u), direct_wht(&x1x2, u));
        }
    }

    #[test]
    fn wht_matches_direct_sum() {
        let f = TruthTable::from_fn(7, |p| (p * p + 3 * p) % 7 < 3).unwrap();
        let s = wht(&f, &Pairing::Standard).unwrap();
        for u in 0..128 {
            assert_eq!(s.get(u), direct_wht(&f, u));
        }
        assert!(s.satisfies_parseval());
    }

    #[test]
    fn trace_form_spectrum_is_direct_sum_over_pairing() {
        let ctx = FieldCtx::with_default(2).unwrap();
        let pairing = Pairing::TraceForm(ctx.clone());
        let f = TruthTable::from_fn(4, |p| p % 3 == 1).unwrap();
        let s = wht(&f, &pairing).unwrap();
        for u in 0..16u32 {
            let direct: i64 = (0..16u32)
                .map(|x| {
                    let bit = f.get(x) ^ ctx.trace_pairing(ctx.split_index(u), ctx.split_index(x));
                    if bit {
                        -1
                    } else {
                        1
                    }
                })
                .sum();
            assert_eq!(s.get(u), direct);
        }
        assert!(wht(&TruthTable::zeros(6).unwrap(), &pairing).is_err());
    }

    #[test]
    fn restricted_examples() {
        let zero = TruthTable::zeros(4).unwrap();
        assert_eq!(wht_restricted(&zero, 0, WeightParity::Even), 8);
        let x1 = TruthTable::linear(2, 1).unwrap();
        assert_eq!(wht_restricted(&x1, 0, WeightParity::Odd), 0);
        let f = TruthTable::from_fn(6, |p| (p * 5 + 1) % 9 < 4).unwrap();
        let s = wht(&f, &Pairing::Standard).unwrap();
        for u in 0..64 {
            let sum = wht_restricted(&f, u, WeightParity::Even) + wht_restricted(&f, u, WeightParity::Odd);
            assert_eq!(sum, s.get(u));
        }
    }

    #[test]
    fn nonlinearity_examples() {
        for u in 0..16 {
            assert_eq!(nonlinearity(&TruthTable::linear(4, u).unwrap()), 0);
            assert_eq!(nonlinearity(&TruthTable::linear(4, u).unwrap().complement()), 0);
        }
        let f = x1x3_x2x4();
        assert_eq!(nonlinearity(&f), 6);
        assert!(is_bent(&f));
        let s6 = symmetric_bent(6, false, false).unwrap();
        assert_eq!(nonlinearity(&s6), 28);
        assert!(is_bent(&s6));
        assert!(!is_bent(&TruthTable::zeros(4).unwrap()));
        assert!(!is_bent(&TruthTable::from_fn(5, |p| p == 3).unwrap()));
    }

    #[test]
    fn dual_examples() {
        let f = x1x3_x2x4();
        assert_eq!(dual(&f, &Pairing::Standard).unwrap(), f);
        match dual(&TruthTable::zeros(4).unwrap(), &Pairing::Standard) {
            Err(Error::NotBent { point: 0, value: 16 }) => {}
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rayleigh_and_distance() {
        let f = x1x3_x2x4();
        let r = rayleigh(&f, &Pairing::Standard).unwrap();
        assert_eq!(r, Rayleigh { s: 64, n: 16 });
        assert_eq!(dist_to_dual(&f, &Pairing::Standard).unwrap(), 0);
        assert_eq!(dist(&f, &f).unwrap(), 0);
        assert!(rayleigh(&TruthTable::zeros(4).unwrap(), &Pairing::Standard).is_err());
        // S_f is defined for non-bent f too
        assert_eq!(rayleigh_quotient(&TruthTable::zeros(4).unwrap(), &Pairing::Standard).unwrap(), 16);

        let s6 = symmetric_bent(6, false, false).unwrap();
        let c = duality_class(&s6, &Pairing::Standard).unwrap();
        assert_eq!(c, DualityClass { tag: DualityTag::AntiSelfDual, dist_to_dual: 64 });
        assert_eq!(dist_to_dual_verified(&s6, &Pairing::Standard).unwrap(), (64, 64));
    }

    #[test]
    fn matrices() {
        let a = example_orthogonal_matrix();
        let a2 = example_lower_triangular_matrix();
        assert!(a.is_orthogonal());
        assert!(!a2.is_orthogonal());
        assert!(a2.is_invertible());
        assert_eq!(a.mul(&a.inverse().unwrap()), BinaryMatrix::identity(4));
        let p = BinaryMatrix::permutation(&[2, 0, 3, 1]);
        assert!(p.is_orthogonal());
        assert!(a.block_diag(&p).is_orthogonal());
        let singular = BinaryMatrix::from_row_strings(&["1100", "1100", "0010", "0001"]);
        assert!(!singular.is_invertible());
        assert!(matches!(orthogonal_transform(&x1x3_x2x4(), &singular, 0), Err(Error::SingularMatrix)));
    }

    #[test]
    fn affine_invariance_example() {
        let f = x1x3_x2x4();
        let id = orthogonal_transform(&f, &BinaryMatrix::identity(4), 0).unwrap();
        assert_eq!(id, f);
        let g = orthogonal_transform(&f, &example_orthogonal_matrix(), 0).unwrap();
        assert_eq!(dist_to_dual(&g, &Pairing::Standard).unwrap(), 0);
        let g2 = orthogonal_transform(&f, &example_lower_triangular_matrix(), 0).unwrap();
        assert_eq!(dist_to_dual(&g2, &Pairing::Standard).unwrap(), 8);
        // b = (0, 1, 1, 1): x2 = x3 = x4 = 1
        let h = orthogonal_transform(&f, &example_orthogonal_matrix(), 0b1110).unwrap();
        assert_eq!(dist_to_dual(&h, &Pairing::Standard).unwrap(), 8);
    }

    #[test]
    fn mm_dual_involution_sample() {
        let pi = Permutation::new(vec![3, 6, 1, 0, 7, 2, 5, 4]).unwrap();
        let g = TruthTable::from_support(3, [1, 4, 6]).unwrap();
        let f = mm_bent(&pi, &g).unwrap();
        let d = dual(&f, &Pairing::Standard).unwrap();
        assert_eq!(dual(&d, &Pairing::Standard).unwrap(), f);
    }
}
