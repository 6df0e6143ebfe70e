//! Bit-packed truth tables, the algebraic normal form, and the constructive
//! bent families that are defined directly on truth tables.

use std::fmt;

use crate::error::{Error, Result};

pub const MIN_VARS: u32 = 2;
pub const MAX_VARS: u32 = 24;

// Masks selecting the positions whose bit `s` is clear, for s = 1, 2, 4, 8, 16, 32.
const LOW_MASKS: [(u32, u64); 6] = [
    (1, 0x5555_5555_5555_5555),
    (2, 0x3333_3333_3333_3333),
    (4, 0x0f0f_0f0f_0f0f_0f0f),
    (8, 0x00ff_00ff_00ff_00ff),
    (16, 0x0000_ffff_0000_ffff),
    (32, 0x0000_0000_ffff_ffff),
];

/// A Boolean function on `n` variables stored as `2^n` packed bits.
///
/// Bit `idx(x)` holds `f(x)` where `idx(x_1, ..., x_n) = sum x_i 2^(i-1)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruthTable {
    n: u32,
    words: Vec<u64>,
}

impl fmt::Debug for TruthTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruthTable({}, {})", self.n, self.to_hex())
    }
}

impl fmt::Display for TruthTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

fn check_vars(n: u32) -> Result<()> {
    if (MIN_VARS..=MAX_VARS).contains(&n) {
        Ok(())
    } else {
        Err(Error::VariableCount(n))
    }
}

impl TruthTable {
    pub fn zeros(n: u32) -> Result<Self> {
        check_vars(n)?;
        let words = (1usize << n).div_ceil(64);
        Ok(TruthTable { n, words: vec![0; words] })
    }

    pub fn constant(n: u32, value: bool) -> Result<Self> {
        let mut t = Self::zeros(n)?;
        if value {
            t.words.iter_mut().for_each(|w| *w = !0);
            t.clear_tail();
        }
        Ok(t)
    }

    pub fn from_fn(n: u32, mut f: impl FnMut(u32) -> bool) -> Result<Self> {
        let mut t = Self::zeros(n)?;
        for x in 0..t.len() as u32 {
            if f(x) {
                t.set(x, true);
            }
        }
        Ok(t)
    }

    pub fn from_support(n: u32, support: impl IntoIterator<Item = u32>) -> Result<Self> {
        let mut t = Self::zeros(n)?;
        for x in support {
            if x as usize >= t.len() {
                return Err(Error::PointOutOfRange { point: x, n });
            }
            t.set(x, true);
        }
        Ok(t)
    }

    /// A linear function `u . x`.
    pub fn linear(n: u32, u: u32) -> Result<Self> {
        Self::from_fn(n, |x| (x & u).count_ones() & 1 == 1)
    }

    #[inline]
    pub fn n(&self) -> u32 {
        self.n
    }

    /// Number of points, `2^n`.
    #[inline]
    pub fn len(&self) -> usize {
        1 << self.n
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn get(&self, x: u32) -> bool {
        self.words[(x >> 6) as usize] >> (x & 63) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, x: u32, value: bool) {
        let w = &mut self.words[(x >> 6) as usize];
        if value {
            *w |= 1 << (x & 63);
        } else {
            *w &= !(1 << (x & 63));
        }
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    fn clear_tail(&mut self) {
        if self.n < 6 {
            self.words[0] &= (1u64 << (1 << self.n)) - 1;
        }
    }

    pub fn weight(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    pub fn is_balanced(&self) -> bool {
        self.weight() == 1 << (self.n - 1)
    }

    pub fn support(&self) -> impl Iterator<Item = u32> + '_ {
        (0..self.len() as u32).filter(move |&x| self.get(x))
    }

    /// `(-1)^f(x)` for every point.
    pub fn signs(&self) -> Vec<i64> {
        (0..self.len() as u32).map(|x| if self.get(x) { -1 } else { 1 }).collect()
    }

    pub fn complement(&self) -> Self {
        let mut t = self.clone();
        t.words.iter_mut().for_each(|w| *w = !*w);
        t.clear_tail();
        t
    }

    pub fn xor(&self, other: &Self) -> Result<Self> {
        self.same_size(other)?;
        let words = self.words.iter().zip(&other.words).map(|(a, b)| a ^ b).collect();
        Ok(TruthTable { n: self.n, words })
    }

    pub fn hamming_distance(&self, other: &Self) -> Result<u64> {
        self.same_size(other)?;
        Ok(self.words.iter().zip(&other.words).map(|(a, b)| (a ^ b).count_ones() as u64).sum())
    }

    fn same_size(&self, other: &Self) -> Result<()> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(Error::SizeMismatch { left: self.n, right: other.n })
        }
    }

    /// `D_u f(x) = f(x) ^ f(x ^ u)`.
    pub fn derivative(&self, u: u32) -> Result<Self> {
        if u as usize >= self.len() {
            return Err(Error::PointOutOfRange { point: u, n: self.n });
        }
        Self::from_fn(self.n, |x| self.get(x) ^ self.get(x ^ u))
    }

    /// Binary Moebius transform. The transform is an involution, so the same
    /// routine maps truth table to ANF and back.
    fn moebius_in_place(words: &mut [u64], n: u32) {
        for &(s, mask) in LOW_MASKS.iter().filter(|(s, _)| *s < 1 << n.min(6)) {
            for w in words.iter_mut() {
                *w ^= (*w & mask) << s;
            }
        }
        let mut h = 1;
        while h < words.len() {
            for base in (0..words.len()).step_by(2 * h) {
                for i in base..base + h {
                    words[i + h] ^= words[i];
                }
            }
            h *= 2;
        }
    }

    pub fn to_anf(&self) -> AnfPoly {
        let mut words = self.words.clone();
        Self::moebius_in_place(&mut words, self.n);
        AnfPoly { coeffs: TruthTable { n: self.n, words } }
    }

    /// Lowercase hex, most significant nibble first; the last digit holds
    /// `f(3) f(2) f(1) f(0)`.
    pub fn to_hex(&self) -> String {
        let digits = self.len() / 4;
        let mut s = String::with_capacity(digits);
        for d in (0..digits).rev() {
            let nibble = (self.words[d / 16] >> ((d % 16) * 4)) & 0xf;
            s.push(char::from_digit(nibble as u32, 16).unwrap());
        }
        s
    }

    /// Parses the format written by [`TruthTable::to_hex`]. The variable count
    /// is implied by the length, which must be `2^(n-2)` digits.
    pub fn from_hex(hex: &str) -> Result<Self> {
        let hex = hex.trim();
        let hex = hex.strip_prefix("0x").unwrap_or(hex);
        let len = hex.len();
        if len == 0 || !len.is_power_of_two() {
            return Err(Error::Hex(format!("length {len} is not a power of two")));
        }
        let n = len.trailing_zeros() + 2;
        let mut t = Self::zeros(n).map_err(|_| Error::Hex(format!("length {len} too long")))?;
        for (pos, ch) in hex.chars().rev().enumerate() {
            let nibble = ch.to_digit(16).ok_or_else(|| Error::Hex(format!("bad digit {ch:?}")))? as u64;
            t.words[pos / 16] |= nibble << ((pos % 16) * 4);
        }
        Ok(t)
    }

    /// Like [`TruthTable::from_hex`] but insists on `n` variables.
    pub fn from_hex_n(hex: &str, n: u32) -> Result<Self> {
        let t = Self::from_hex(hex)?;
        if t.n != n {
            return Err(Error::Hex(format!(
                "expected {} hex digits for n = {n}, got {}",
                (1usize << n) / 4,
                hex.trim().trim_start_matches("0x").len()
            )));
        }
        Ok(t)
    }
}

/// Algebraic normal form: bit `idx(a)` is the coefficient of `prod x_i^a_i`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AnfPoly {
    coeffs: TruthTable,
}

/// Algebraic degree. The zero polynomial reports degree 0 with `is_zero` set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AnfDegree {
    pub degree: u32,
    pub is_zero: bool,
}

impl AnfPoly {
    pub fn n(&self) -> u32 {
        self.coeffs.n
    }

    pub fn coefficient(&self, a: u32) -> bool {
        self.coeffs.get(a)
    }

    pub fn monomials(&self) -> impl Iterator<Item = u32> + '_ {
        self.coeffs.support()
    }

    pub fn degree(&self) -> AnfDegree {
        match self.monomials().map(u32::count_ones).max() {
            Some(degree) => AnfDegree { degree, is_zero: false },
            None => AnfDegree { degree: 0, is_zero: true },
        }
    }

    /// Sums the coefficients of all monomials dividing `x`.
    pub fn eval(&self, x: u32) -> bool {
        let mut acc = self.coeffs.get(0);
        let mut sub = x;
        while sub != 0 {
            acc ^= self.coeffs.get(sub);
            sub = (sub - 1) & x;
        }
        acc
    }

    pub fn to_truth_table(&self) -> TruthTable {
        let mut words = self.coeffs.words.clone();
        TruthTable::moebius_in_place(&mut words, self.coeffs.n);
        TruthTable { n: self.coeffs.n, words }
    }
}

impl fmt::Display for AnfPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .monomials()
            .map(|a| {
                if a == 0 {
                    "1".to_string()
                } else {
                    (0..self.n()).filter(|i| a >> i & 1 == 1).map(|i| format!("x{}", i + 1)).collect::<String>()
                }
            })
            .collect();
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join(" + "))
        }
    }
}

/// Indicator of the F_2-span of `basis` in F_2^n.
pub fn subspace_indicator(n: u32, basis: &[u32]) -> Result<TruthTable> {
    let mut t = TruthTable::zeros(n)?;
    for point in span(n, basis)? {
        t.set(point, true);
    }
    Ok(t)
}

/// All `2^dim` points of the span of a linearly independent `basis`.
pub fn span(n: u32, basis: &[u32]) -> Result<Vec<u32>> {
    let mut reduced: Vec<u32> = Vec::with_capacity(basis.len());
    for &b in basis {
        if b >> n != 0 {
            return Err(Error::PointOutOfRange { point: b, n });
        }
        let mut v = b;
        for &r in &reduced {
            v = v.min(v ^ r);
        }
        if v == 0 {
            return Err(Error::DependentBasis(b));
        }
        reduced.push(v);
        reduced.sort_unstable_by(|a, b| b.cmp(a));
    }
    let mut points = vec![0u32];
    for &b in basis {
        let shifted: Vec<u32> = points.iter().map(|p| p ^ b).collect();
        points.extend(shifted);
    }
    points.sort_unstable();
    Ok(points)
}

/// `sum_{i<j} x_i x_j + eps1 * sum x_i + eps2`: the four symmetric bent
/// functions on `n` variables. Its value on a point of weight `w` is
/// `C(w, 2) + eps1 w + eps2 mod 2`.
pub fn symmetric_bent(n: u32, eps1: bool, eps2: bool) -> Result<TruthTable> {
    if n % 2 == 1 {
        return Err(Error::OddVariableCount(n));
    }
    TruthTable::from_fn(n, |x| symmetric_value(x.count_ones(), eps1, eps2))
}

/// `c_w` of the symmetric bent function.
pub fn symmetric_value(weight: u32, eps1: bool, eps2: bool) -> bool {
    ((weight >> 1) & 1 == 1) ^ (eps1 && weight & 1 == 1) ^ eps2
}

/// A bijection on `0..2^k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Permutation(Vec<u32>);

impl Permutation {
    pub fn new(table: Vec<u32>) -> Result<Self> {
        let len = table.len();
        let mut seen = vec![false; len];
        for &v in &table {
            match seen.get_mut(v as usize) {
                Some(s) if !*s => *s = true,
                _ => return Err(Error::NotAPermutation(len)),
            }
        }
        Ok(Permutation(table))
    }

    pub fn identity(len: usize) -> Self {
        Permutation((0..len as u32).collect())
    }

    #[inline]
    pub fn apply(&self, x: u32) -> u32 {
        self.0[x as usize]
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.0.len()];
        for (x, &y) in self.0.iter().enumerate() {
            inv[y as usize] = x as u32;
        }
        Permutation(inv)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }
}

fn mm_check(pi: &Permutation, g: &TruthTable) -> Result<u32> {
    let k = g.n();
    if pi.len() != g.len() {
        return Err(Error::NotAPermutation(g.len()));
    }
    Ok(k)
}

/// Maiorana-McFarland function `f(x, y) = x . pi(y) + g(y)` on `2k` variables,
/// where `x` occupies the low `k` index bits and `y` the high `k` bits.
pub fn mm_bent(pi: &Permutation, g: &TruthTable) -> Result<TruthTable> {
    let k = mm_check(pi, g)?;
    let mask = (1u32 << k) - 1;
    TruthTable::from_fn(2 * k, |idx| {
        let (x, y) = (idx & mask, idx >> k);
        ((x & pi.apply(y)).count_ones() & 1 == 1) ^ g.get(y)
    })
}

/// Dual of [`mm_bent`]: `(x, y) -> y . pi^-1(x) + g(pi^-1(x))`.
pub fn mm_dual(pi: &Permutation, g: &TruthTable) -> Result<TruthTable> {
    let k = mm_check(pi, g)?;
    let mask = (1u32 << k) - 1;
    let inv = pi.inverse();
    TruthTable::from_fn(2 * k, |idx| {
        let (x, y) = (idx & mask, idx >> k);
        let px = inv.apply(x);
        ((y & px).count_ones() & 1 == 1) ^ g.get(px)
    })
}
