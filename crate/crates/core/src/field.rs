//! Arithmetic in GF(2^k) for 1 <= k <= 16 over the polynomial basis `1, x, ..., x^(k-1)`.
//!
//! Elements are bit vectors of coefficients (bit `i` is the coefficient of `x^i`).
//! The absolute trace and the trace bilinear form are available directly and,
//! through the Gram matrix of the trace form, as ordinary dot products on
//! coordinate vectors.

use std::fmt;

use crate::error::FieldError;

/// Largest supported extension degree.
pub const MAX_DEGREE: u32 = 16;

/// An element of GF(2^k), stored as its coefficient vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct GfElem(pub u32);

impl GfElem {
    pub const ZERO: GfElem = GfElem(0);
    pub const ONE: GfElem = GfElem(1);

    #[inline]
    pub fn bits(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl From<u32> for GfElem {
    fn from(bits: u32) -> Self {
        GfElem(bits)
    }
}

impl fmt::Display for GfElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#x}", self.0)
    }
}

/// Default irreducible polynomial for small degrees, as a (k+1)-bit mask.
pub fn default_poly(k: u32) -> Option<u32> {
    match k {
        1 => Some(0b11),          // x + 1
        2 => Some(0b111),         // x^2 + x + 1
        3 => Some(0b1011),        // x^3 + x + 1
        4 => Some(0b1_0011),      // x^4 + x + 1
        5 => Some(0b10_0101),     // x^5 + x^2 + 1
        6 => Some(0b100_0011),    // x^6 + x + 1
        7 => Some(0b1000_0011),   // x^7 + x + 1
        8 => Some(0b1_0001_1011), // x^8 + x^4 + x^3 + x + 1
        _ => None,
    }
}

/// Renders a polynomial mask as `x^3 + x + 1`.
pub fn poly_to_string(poly: u32) -> String {
    if poly == 0 {
        return "0".to_string();
    }
    let mut terms = Vec::new();
    for i in (0..32).rev() {
        if poly >> i & 1 == 1 {
            terms.push(match i {
                0 => "1".to_string(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            });
        }
    }
    terms.join(" + ")
}

#[inline]
fn degree(poly: u32) -> u32 {
    31 - poly.leading_zeros()
}

/// Remainder of carry-less polynomial division over F_2.
fn poly_rem(mut a: u32, b: u32) -> u32 {
    let db = degree(b);
    while a != 0 && degree(a) >= db {
        a ^= b << (degree(a) - db);
    }
    a
}

/// Smallest nontrivial factor of `poly`, found by trial division over all
/// polynomials of degree 1..=deg/2.
fn smallest_factor(poly: u32) -> Option<u32> {
    let d = degree(poly);
    for fd in 1..=d / 2 {
        for cand in (1u32 << fd)..(1u32 << (fd + 1)) {
            if poly_rem(poly, cand) == 0 {
                return Some(cand);
            }
        }
    }
    None
}

/// Immutable arithmetic context for GF(2^k).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldCtx {
    k: u32,
    poly: u32,
    /// `gram[i]` is row `i` of the trace-form Gram matrix, packed as a bitmask:
    /// bit `j` is `Tr(x^i * x^j)`.
    gram: Vec<u32>,
    gram_inv: Vec<u32>,
    /// Bit `i` is `Tr(x^i)`; `Tr(a) = parity(a & trace_mask)`.
    trace_mask: u32,
}

impl FieldCtx {
    /// Builds a context for GF(2^k). With `poly = None` the default polynomial
    /// for `k` is used (available for k <= 8).
    pub fn new(k: u32, poly: Option<u32>) -> Result<Self, FieldError> {
        if k == 0 || k > MAX_DEGREE {
            return Err(FieldError::DegreeOutOfRange(k));
        }
        let poly = match poly {
            Some(p) => p,
            None => default_poly(k).ok_or(FieldError::NoDefaultPolynomial(k))?,
        };
        if poly == 0 || degree(poly) != k {
            return Err(FieldError::WrongDegree { poly, k });
        }
        if let Some(factor) = smallest_factor(poly) {
            return Err(FieldError::Reducible { poly: poly_to_string(poly), factor: poly_to_string(factor) });
        }
        let mut ctx = FieldCtx { k, poly, gram: Vec::new(), gram_inv: Vec::new(), trace_mask: 0 };
        ctx.trace_mask = (0..k).filter(|&i| ctx.trace_by_frobenius(GfElem(1 << i))).fold(0, |m, i| m | 1 << i);
        ctx.gram = (0..k)
            .map(|i| {
                (0..k).filter(|&j| ctx.trace(ctx.mul(GfElem(1 << i), GfElem(1 << j)))).fold(0, |row, j| row | 1 << j)
            })
            .collect();
        ctx.gram_inv = invert_matrix(&ctx.gram, k).ok_or(FieldError::DegenerateTraceForm)?;
        Ok(ctx)
    }

    /// Context with the default polynomial for `k`.
    pub fn with_default(k: u32) -> Result<Self, FieldError> {
        Self::new(k, None)
    }

    #[inline]
    pub fn k(&self) -> u32 {
        self.k
    }

    #[inline]
    pub fn order(&self) -> u32 {
        1 << self.k
    }

    #[inline]
    pub fn reduction_poly(&self) -> u32 {
        self.poly
    }

    /// Rows of the trace-form Gram matrix as bitmasks.
    pub fn gram(&self) -> &[u32] {
        &self.gram
    }

    /// All field elements in increasing bit order.
    pub fn elements(&self) -> impl Iterator<Item = GfElem> {
        (0..self.order()).map(GfElem)
    }

    #[inline]
    pub fn contains(&self, a: GfElem) -> bool {
        a.0 < self.order()
    }

    #[inline]
    pub fn add(&self, a: GfElem, b: GfElem) -> GfElem {
        GfElem(a.0 ^ b.0)
    }

    /// Shift-and-add product reduced modulo the field polynomial.
    pub fn mul(&self, a: GfElem, b: GfElem) -> GfElem {
        debug_assert!(self.contains(a) && self.contains(b));
        let top = 1u32 << self.k;
        let mut acc = 0u32;
        let mut a = a.0;
        let mut b = b.0;
        while b != 0 {
            if b & 1 == 1 {
                acc ^= a;
            }
            b >>= 1;
            a <<= 1;
            if a & top != 0 {
                a ^= self.poly;
            }
        }
        GfElem(acc)
    }

    #[inline]
    pub fn square(&self, a: GfElem) -> GfElem {
        self.mul(a, a)
    }

    pub fn pow(&self, a: GfElem, mut e: u64) -> GfElem {
        let mut base = a;
        let mut acc = GfElem::ONE;
        while e != 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.square(base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse, computed as `a^(2^k - 2)`.
    pub fn inv(&self, a: GfElem) -> Result<GfElem, FieldError> {
        if a.is_zero() {
            return Err(FieldError::ZeroInverse);
        }
        Ok(self.pow(a, (1u64 << self.k) - 2))
    }

    /// `x / y` with the convention `x / 0 = 0`.
    pub fn div_conv(&self, x: GfElem, y: GfElem) -> GfElem {
        match self.inv(y) {
            Ok(y_inv) => self.mul(x, y_inv),
            Err(_) => GfElem::ZERO,
        }
    }

    /// Absolute trace `Tr(a) = a + a^2 + ... + a^(2^(k-1))`.
    #[inline]
    pub fn trace(&self, a: GfElem) -> bool {
        (a.0 & self.trace_mask).count_ones() & 1 == 1
    }

    fn trace_by_frobenius(&self, a: GfElem) -> bool {
        let mut sum = GfElem::ZERO;
        let mut conj = a;
        for _ in 0..self.k {
            sum = self.add(sum, conj);
            conj = self.square(conj);
        }
        debug_assert!(sum.0 <= 1, "trace must land in F_2");
        sum.0 == 1
    }

    /// The bilinear form `Tr(x x') + Tr(y y')` on GF(2^k)^2.
    pub fn trace_pairing(&self, p: (GfElem, GfElem), q: (GfElem, GfElem)) -> bool {
        self.trace(self.mul(p.0, q.0)) ^ self.trace(self.mul(p.1, q.1))
    }

    /// Applies the Gram matrix to a single k-bit coordinate vector.
    #[inline]
    pub fn gram_apply(&self, v: u32) -> u32 {
        apply_matrix(&self.gram, v)
    }

    /// Applies `diag(gram, gram)` to a 2k-bit vector laid out as
    /// `bits(x) + 2^k * bits(y)`, so that the dot product of `p` with the
    /// result equals `trace_pairing(p, q)` for `q = u`.
    pub fn gram_index_map(&self, u: u32) -> u32 {
        let mask = self.order() - 1;
        let lo = apply_matrix(&self.gram, u & mask);
        let hi = apply_matrix(&self.gram, (u >> self.k) & mask);
        lo | hi << self.k
    }

    /// Inverse of [`FieldCtx::gram_index_map`].
    pub fn gram_index_map_inv(&self, u: u32) -> u32 {
        let mask = self.order() - 1;
        let lo = apply_matrix(&self.gram_inv, u & mask);
        let hi = apply_matrix(&self.gram_inv, (u >> self.k) & mask);
        lo | hi << self.k
    }

    /// Splits a 2k-bit domain index into its `(x, y)` field coordinates.
    #[inline]
    pub fn split_index(&self, idx: u32) -> (GfElem, GfElem) {
        let mask = self.order() - 1;
        (GfElem(idx & mask), GfElem(idx >> self.k))
    }

    #[inline]
    pub fn join_index(&self, x: GfElem, y: GfElem) -> u32 {
        x.0 | y.0 << self.k
    }
}

/// Matrix-vector product over F_2 with rows packed as bitmasks.
#[inline]
pub(crate) fn apply_matrix(rows: &[u32], v: u32) -> u32 {
    rows.iter().enumerate().fold(0, |acc, (i, &row)| acc | ((row & v).count_ones() & 1) << i)
}

/// Gauss-Jordan inversion of a square F_2 matrix. `None` if singular.
pub(crate) fn invert_matrix(rows: &[u32], dim: u32) -> Option<Vec<u32>> {
    let dim = dim as usize;
    let mut a = rows.to_vec();
    let mut inv: Vec<u32> = (0..dim).map(|i| 1 << i).collect();
    for col in 0..dim {
        let pivot = (col..dim).find(|&r| a[r] >> col & 1 == 1)?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        for r in 0..dim {
            if r != col && a[r] >> col & 1 == 1 {
                a[r] ^= a[col];
                inv[r] ^= inv[col];
            }
        }
    }
    Some(inv)
}
