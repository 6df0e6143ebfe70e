//! Partial-spread bent functions.
//!
//! The Desarguesian spread of GF(2^k) x GF(2^k) consists of the lines
//! `E_a = {(x, xa)}` for every field element `a` and `E_inf = {(0, y)}`.
//! Under the trace form the orthogonal complement of `E_a` is `E_(1/a)`,
//! with `E_0` and `E_inf` swapped, so the dual of a `PS^-` function built
//! from a selection of lines is the `PS^-` function of the dual lines.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::boolfun::{span, TruthTable};
use crate::error::{Error, Result};
use crate::field::{FieldCtx, GfElem};
use crate::spectral::Pairing;

/// A line of the Desarguesian spread.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SpreadLine {
    /// `E_a = {(x, xa) : x in GF(2^k)}`.
    Finite(GfElem),
    /// `E_inf = {(0, y) : y in GF(2^k)}`.
    Infinity,
}

impl fmt::Display for SpreadLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpreadLine::Finite(a) => write!(f, "{}", a.0),
            SpreadLine::Infinity => f.write_str("inf"),
        }
    }
}

impl Serialize for SpreadLine {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl FromStr for SpreadLine {
    type Err = Error;

    /// Accepts `inf`, a decimal element, or a `0x` hex element.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("inf") || s == "∞" {
            return Ok(SpreadLine::Infinity);
        }
        let parsed = match s.strip_prefix("0x") {
            Some(hex) => u32::from_str_radix(hex, 16),
            None => s.parse::<u32>(),
        };
        parsed.map(|v| SpreadLine::Finite(GfElem(v))).map_err(|_| Error::Hex(format!("bad spread line {s:?}")))
    }
}

/// All `2^k + 1` lines, finite ones in increasing element order, then `E_inf`.
pub fn desarguesian(ctx: &FieldCtx) -> Vec<SpreadLine> {
    ctx.elements().map(SpreadLine::Finite).chain(std::iter::once(SpreadLine::Infinity)).collect()
}

/// Domain indices of the `2^k` points of `line`, in increasing `x` (or `y`).
pub fn line_points(ctx: &FieldCtx, line: SpreadLine) -> Vec<u32> {
    match line {
        SpreadLine::Finite(a) => ctx.elements().map(|x| ctx.join_index(x, ctx.mul(x, a))).collect(),
        SpreadLine::Infinity => ctx.elements().map(|y| ctx.join_index(GfElem::ZERO, y)).collect(),
    }
}

/// Orthogonal complement under the trace form: `E_a -> E_(1/a)`, `E_0 <-> E_inf`.
pub fn line_dual(ctx: &FieldCtx, line: SpreadLine) -> SpreadLine {
    match line {
        SpreadLine::Finite(a) if a.is_zero() => SpreadLine::Infinity,
        SpreadLine::Finite(a) => SpreadLine::Finite(ctx.inv(a).expect("nonzero")),
        SpreadLine::Infinity => SpreadLine::Finite(GfElem::ZERO),
    }
}

/// A set of distinct Desarguesian lines, kept sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpreadSelection {
    ctx: FieldCtx,
    lines: Vec<SpreadLine>,
}

impl SpreadSelection {
    pub fn new(ctx: &FieldCtx, mut lines: Vec<SpreadLine>) -> Result<Self> {
        for line in &lines {
            if let SpreadLine::Finite(a) = line {
                if !ctx.contains(*a) {
                    return Err(Error::ElementOutOfRange(a.0));
                }
            }
        }
        lines.sort_unstable();
        if let Some(w) = lines.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateLine(w[0].to_string()));
        }
        Ok(SpreadSelection { ctx: ctx.clone(), lines })
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn k(&self) -> u32 {
        self.ctx.k()
    }

    pub fn n(&self) -> u32 {
        2 * self.ctx.k()
    }

    pub fn lines(&self) -> &[SpreadLine] {
        &self.lines
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    pub fn contains(&self, line: SpreadLine) -> bool {
        self.lines.binary_search(&line).is_ok()
    }

    /// `{line_dual(L) : L in self}`.
    pub fn dual(&self) -> SpreadSelection {
        let lines = self.lines.iter().map(|&l| line_dual(&self.ctx, l)).collect();
        SpreadSelection::new(&self.ctx, lines).expect("line_dual is a bijection")
    }

    pub fn expect_len(&self, expected: usize) -> Result<()> {
        if self.lines.len() == expected {
            Ok(())
        } else {
            Err(Error::SelectionSize { expected, actual: self.lines.len() })
        }
    }

    pub fn half(&self) -> usize {
        1 << (self.k() - 1)
    }

    fn union(&self) -> Result<TruthTable> {
        let mut t = TruthTable::zeros(self.n())?;
        for &line in &self.lines {
            for p in line_points(&self.ctx, line) {
                t.set(p, true);
            }
        }
        Ok(t)
    }
}

/// `PS^-`: indicator of the union of `2^(k-1)` lines with the origin removed.
pub fn ps_minus(sel: &SpreadSelection) -> Result<TruthTable> {
    sel.expect_len(sel.half())?;
    let mut t = sel.union()?;
    t.set(0, false);
    Ok(t)
}

/// `PS^+`: indicator of the union of `2^(k-1) + 1` lines, origin included.
pub fn ps_plus(sel: &SpreadSelection) -> Result<TruthTable> {
    sel.expect_len(sel.half() + 1)?;
    sel.union()
}

fn check_dillon_g(ctx: &FieldCtx, g: &TruthTable) -> Result<()> {
    if g.n() != ctx.k() {
        return Err(Error::SizeMismatch { left: ctx.k(), right: g.n() });
    }
    if !g.is_balanced() || g.get(0) {
        return Err(Error::InvalidDillonG);
    }
    Ok(())
}

/// `f(x, y) = g(x / y)` with `x / 0 = 0`, for balanced `g` with `g(0) = 0`.
pub fn psap_from_g(ctx: &FieldCtx, g: &TruthTable) -> Result<TruthTable> {
    check_dillon_g(ctx, g)?;
    TruthTable::from_fn(2 * ctx.k(), |idx| {
        let (x, y) = ctx.split_index(idx);
        g.get(ctx.div_conv(x, y).0)
    })
}

/// Lines carrying the support of `psap_from_g(g)`: the points with `x / y = u`
/// lie on `E_(1/u)`.
pub fn selection_from_g(ctx: &FieldCtx, g: &TruthTable) -> Result<SpreadSelection> {
    check_dillon_g(ctx, g)?;
    let lines = g.support().map(|u| SpreadLine::Finite(ctx.inv(GfElem(u)).expect("g(0) = 0"))).collect();
    SpreadSelection::new(ctx, lines)
}

/// Self-duality criterion for a `PS^-` selection: `E_1` absent, `E_0` and
/// `E_inf` both present or both absent, and the remaining lines closed under
/// `a -> 1/a`.
pub fn is_selfdual_selection(sel: &SpreadSelection) -> Result<bool> {
    sel.expect_len(sel.half())?;
    let zero = SpreadLine::Finite(GfElem::ZERO);
    if sel.contains(SpreadLine::Finite(GfElem::ONE)) {
        return Ok(false);
    }
    if sel.contains(zero) != sel.contains(SpreadLine::Infinity) {
        return Ok(false);
    }
    Ok(sel.lines().iter().all(|&l| match l {
        SpreadLine::Finite(a) if a.0 > 1 => sel.contains(line_dual(sel.ctx(), l)),
        _ => true,
    }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SpreadKind {
    Minus,
    Plus,
}

/// A partial spread of `n/2`-dimensional subspaces together with their
/// orthogonal complements under a chosen pairing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialSpread {
    n: u32,
    pairing: Pairing,
    members: Vec<Vec<u32>>,
    duals: Vec<Vec<u32>>,
}

impl PartialSpread {
    /// Lines of a Desarguesian selection with trace-form duals.
    pub fn from_selection(sel: &SpreadSelection) -> Self {
        let ctx = sel.ctx();
        PartialSpread {
            n: sel.n(),
            pairing: Pairing::TraceForm(ctx.clone()),
            members: sel.lines().iter().map(|&l| line_points(ctx, l)).collect(),
            duals: sel.lines().iter().map(|&l| line_points(ctx, line_dual(ctx, l))).collect(),
        }
    }

    /// Arbitrary subspaces of F_2^n given by bases, with standard duals.
    /// Validates dimension `n/2`, pairwise trivial intersection, and a member
    /// count of `2^(k-1)` or `2^(k-1) + 1`.
    pub fn from_bases(n: u32, bases: &[Vec<u32>]) -> Result<Self> {
        if n % 2 == 1 {
            return Err(Error::OddVariableCount(n));
        }
        TruthTable::zeros(n)?;
        let k = n / 2;
        let half = 1usize << (k - 1);
        if bases.len() != half && bases.len() != half + 1 {
            return Err(Error::SubspaceCount { count: bases.len(), k });
        }
        let mut members = Vec::with_capacity(bases.len());
        for (index, basis) in bases.iter().enumerate() {
            if basis.len() != k as usize {
                return Err(Error::SubspaceDimension { index, dim: basis.len(), expected: k as usize });
            }
            members.push(span(n, basis)?);
        }
        for i in 0..members.len() {
            for j in i + 1..members.len() {
                if members[i][1..].iter().any(|p| members[j].binary_search(p).is_ok()) {
                    return Err(Error::SubspacesIntersect { first: i, second: j });
                }
            }
        }
        let duals = bases
            .iter()
            .map(|basis| (0..1u32 << n).filter(|x| basis.iter().all(|b| (b & x).count_ones() & 1 == 0)).collect())
            .collect();
        Ok(PartialSpread { n, pairing: Pairing::Standard, members, duals })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.n / 2
    }

    pub fn pairing(&self) -> &Pairing {
        &self.pairing
    }

    pub fn members(&self) -> &[Vec<u32>] {
        &self.members
    }

    pub fn duals(&self) -> &[Vec<u32>] {
        &self.duals
    }

    pub fn kind(&self) -> Result<SpreadKind> {
        let half = 1usize << (self.k() - 1);
        match self.members.len() {
            c if c == half => Ok(SpreadKind::Minus),
            c if c == half + 1 => Ok(SpreadKind::Plus),
            count => Err(Error::SubspaceCount { count, k: self.k() }),
        }
    }

    fn build(&self, sets: &[Vec<u32>]) -> Result<TruthTable> {
        let mut t = TruthTable::zeros(self.n)?;
        for p in sets.iter().flatten() {
            t.set(*p, true);
        }
        t.set(0, self.kind()? == SpreadKind::Plus);
        Ok(t)
    }

    /// The `PS^-` or `PS^+` function, by member count.
    pub fn function(&self) -> Result<TruthTable> {
        self.build(&self.members)
    }

    /// The same construction over the orthogonal complements, which is the
    /// dual of [`PartialSpread::function`].
    pub fn dual_function(&self) -> Result<TruthTable> {
        self.build(&self.duals)
    }
}

/// `PS^-` / `PS^+` over arbitrary subspaces given by bases (standard pairing).
pub fn ps_general(n: u32, bases: &[Vec<u32>]) -> Result<TruthTable> {
    PartialSpread::from_bases(n, bases)?.function()
}

/// Bases of the five 2-dimensional subspaces `E_1..E_5` of F_2^4 from the
/// worked example, as point indices (bit string `x1x2x3x4`).
pub fn example_subspaces_n4() -> [Vec<u32>; 5] {
    [
        vec![0b1000, 0b0010], // 0001, 0100
        vec![0b0100, 0b0001], // 0010, 1000
        vec![0b1100, 0b1011], // 0011, 1101
        vec![0b0110, 0b1001], // 0110, 1001
        vec![0b1110, 0b1101], // 0111, 1011
    ]
}

/// Parses a bit string `x1 x2 ... xn` into a point index.
pub fn parse_bit_vector(s: &str) -> Result<u32> {
    let s = s.trim();
    if s.is_empty() || s.len() > 24 {
        return Err(Error::Hex(format!("bad bit vector {s:?}")));
    }
    s.chars().enumerate().try_fold(0u32, |acc, (i, c)| match c {
        '0' => Ok(acc),
        '1' => Ok(acc | 1 << i),
        _ => Err(Error::Hex(format!("bad bit vector {s:?}"))),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::{dist_to_dual, dual, is_bent, rayleigh};
    use itertools::Itertools;

    fn ctx(k: u32) -> FieldCtx {
        FieldCtx::with_default(k).unwrap()
    }

    fn fin(a: u32) -> SpreadLine {
        SpreadLine::Finite(GfElem(a))
    }

    #[test]
    fn spread_shape() {
        for k in 2..=5 {
            let c = ctx(k);
            let lines = desarguesian(&c);
            assert_eq!(lines.len(), (1 << k) + 1);
            let mut covered = vec![0u32; 1 << (2 * k)];
            for &l in &lines {
                let pts = line_points(&c, l);
                assert_eq!(pts.len(), 1 << k);
                for p in pts {
                    covered[p as usize] += 1;
                }
            }
            // origin on every line, every other point on exactly one
            assert_eq!(covered[0], (1 << k) + 1);
            assert!(covered[1..].iter().all(|&c| c == 1));
            assert_eq!(((1 << k) + 1) * ((1 << k) - 1) + 1, 1 << (2 * k));
        }
    }

    #[test]
    fn line_points_examples() {
        let c = ctx(2);
        assert_eq!(line_points(&c, fin(0)), vec![0, 1, 2, 3]);
        assert_eq!(line_points(&c, SpreadLine::Infinity), vec![0, 4, 8, 12]);
    }

    #[test]
    fn line_dual_examples() {
        let c = ctx(2);
        assert_eq!(line_dual(&c, fin(1)), fin(1));
        assert_eq!(line_dual(&c, fin(0)), SpreadLine::Infinity);
        assert_eq!(line_dual(&c, SpreadLine::Infinity), fin(0));
        assert_eq!(line_dual(&c, fin(0b10)), fin(0b11));
    }

    #[test]
    fn line_dual_is_trace_annihilator() {
        for k in 2..=3 {
            let c = ctx(k);
            let size = 1u32 << (2 * k);
            for &l in &desarguesian(&c) {
                assert_eq!(line_dual(&c, line_dual(&c, l)), l);
                let pts = line_points(&c, l);
                let mut annihilator: Vec<u32> = (0..size)
                    .filter(|&q| pts.iter().all(|&p| !c.trace_pairing(c.split_index(p), c.split_index(q))))
                    .collect();
                annihilator.sort_unstable();
                let mut dual_pts = line_points(&c, line_dual(&c, l));
                dual_pts.sort_unstable();
                assert_eq!(annihilator, dual_pts);
            }
        }
    }

    #[test]
    fn selection_validation() {
        let c = ctx(2);
        assert!(matches!(SpreadSelection::new(&c, vec![fin(1), fin(1)]), Err(Error::DuplicateLine(_))));
        assert!(matches!(SpreadSelection::new(&c, vec![fin(4)]), Err(Error::ElementOutOfRange(4))));
        let sel = SpreadSelection::new(&c, vec![SpreadLine::Infinity, fin(3), fin(0)]).unwrap();
        assert_eq!(sel.lines(), &[fin(0), fin(3), SpreadLine::Infinity]);
        assert!(matches!(ps_minus(&sel), Err(Error::SelectionSize { expected: 2, actual: 3 })));
        assert!(ps_plus(&sel).is_ok());
    }

    #[test]
    fn ps_minus_family() {
        let c = ctx(2);
        let sel = SpreadSelection::new(&c, vec![fin(2), fin(3)]).unwrap();
        let f = ps_minus(&sel).unwrap();
        let tf = Pairing::TraceForm(c.clone());
        assert!(is_bent(&f));
        assert_eq!(dual(&f, &tf).unwrap(), f);
        for k in 2..=3 {
            let c = ctx(k);
            let half = 1usize << (k - 1);
            let mut count = 0;
            for lines in desarguesian(&c).into_iter().combinations(half) {
                let sel = SpreadSelection::new(&c, lines).unwrap();
                let f = ps_minus(&sel).unwrap();
                assert!(!f.get(0));
                assert_eq!(f.weight(), (1 << (2 * k - 1)) - (1 << (k - 1)));
                assert!(is_bent(&f));
                count += 1;
            }
            assert_eq!(count, if k == 2 { 10 } else { 126 });
        }
    }

    #[test]
    fn ps_plus_family() {
        for k in 2..=3 {
            let c = ctx(k);
            let half = 1usize << (k - 1);
            for lines in desarguesian(&c).into_iter().combinations(half + 1) {
                let sel = SpreadSelection::new(&c, lines).unwrap();
                let f = ps_plus(&sel).unwrap();
                assert!(f.get(0));
                assert_eq!(f.weight(), (1 << (2 * k - 1)) + (1 << (k - 1)));
                assert!(is_bent(&f));
            }
        }
        // {E_0, E_1, E_inf} is closed under duals
        let c = ctx(2);
        let sel = SpreadSelection::new(&c, vec![fin(0), fin(1), SpreadLine::Infinity]).unwrap();
        let f = ps_plus(&sel).unwrap();
        assert_eq!(dist_to_dual(&f, &Pairing::TraceForm(c)).unwrap(), 0);
    }

    #[test]
    fn dual_selection_gives_dual_function() {
        for k in 2..=3 {
            let c = ctx(k);
            let tf = Pairing::TraceForm(c.clone());
            for lines in desarguesian(&c).into_iter().combinations(1 << (k - 1)) {
                let sel = SpreadSelection::new(&c, lines).unwrap();
                let f = ps_minus(&sel).unwrap();
                assert_eq!(dual(&f, &tf).unwrap(), ps_minus(&sel.dual()).unwrap());
                let ps = PartialSpread::from_selection(&sel);
                assert_eq!(ps.function().unwrap(), f);
                assert_eq!(ps.dual_function().unwrap(), ps_minus(&sel.dual()).unwrap());
            }
        }
    }

    fn valid_gs(k: u32) -> Vec<TruthTable> {
        let size = 1u32 << k;
        (1..size).combinations(1 << (k - 1)).map(|supp| TruthTable::from_support(k, supp).unwrap()).collect()
    }

    #[test]
    fn psap_examples() {
        let c = ctx(2);
        let g = TruthTable::from_support(2, [2, 3]).unwrap();
        let f = psap_from_g(&c, &g).unwrap();
        assert_eq!(rayleigh(&f, &Pairing::TraceForm(c.clone())).unwrap().n, 16);
        let sel = selection_from_g(&c, &g).unwrap();
        assert_eq!(sel.lines(), &[fin(2), fin(3)]);

        assert!(psap_from_g(&c, &TruthTable::from_support(2, [0, 1]).unwrap()).is_err());
        assert!(psap_from_g(&c, &TruthTable::from_support(2, [1]).unwrap()).is_err());
        assert!(psap_from_g(&c, &TruthTable::from_support(3, [1, 2, 3, 4]).unwrap()).is_err());
    }

    #[test]
    fn psap_round_trip_and_selfduality() {
        for k in 2..=3 {
            let c = ctx(k);
            let tf = Pairing::TraceForm(c.clone());
            let gs = valid_gs(k);
            assert_eq!(gs.len(), if k == 2 { 3 } else { 35 });
            for g in gs {
                let f = psap_from_g(&c, &g).unwrap();
                let sel = selection_from_g(&c, &g).unwrap();
                assert_eq!(sel.len(), 1 << (k - 1));
                assert!(!sel.contains(fin(0)) && !sel.contains(SpreadLine::Infinity));
                assert_eq!(ps_minus(&sel).unwrap(), f);
                assert!(is_bent(&f));
                let predicted = !g.get(1) && c.elements().skip(1).all(|u| g.get(u.0) == g.get(c.inv(u).unwrap().0));
                assert_eq!(dist_to_dual(&f, &tf).unwrap() == 0, predicted);
            }
        }
    }

    #[test]
    fn selfdual_criterion_matches_spectrum() {
        let c = ctx(2);
        let sel = SpreadSelection::new(&c, vec![fin(0), SpreadLine::Infinity]).unwrap();
        assert!(is_selfdual_selection(&sel).unwrap());
        for k in 2..=3 {
            let c = ctx(k);
            let tf = Pairing::TraceForm(c.clone());
            for lines in desarguesian(&c).into_iter().combinations(1 << (k - 1)) {
                let sel = SpreadSelection::new(&c, lines).unwrap();
                let selfdual = dist_to_dual(&ps_minus(&sel).unwrap(), &tf).unwrap() == 0;
                assert_eq!(is_selfdual_selection(&sel).unwrap(), selfdual, "{:?}", sel.lines());
                if sel.contains(fin(1)) {
                    assert!(!selfdual);
                }
            }
        }
        let wrong = SpreadSelection::new(&c, vec![fin(0)]).unwrap();
        assert!(is_selfdual_selection(&wrong).is_err());
    }

    #[test]
    fn general_subspaces_n4() {
        let e = example_subspaces_n4();
        for (i, b) in e.iter().enumerate() {
            assert_eq!(span(4, b).unwrap().len(), 4, "E{}", i + 1);
        }
        let all = PartialSpread::from_bases(4, &e[..3]).unwrap();
        // E1^perp = E2, E3^perp = E5, E4^perp = E4
        let pts = |i: usize| span(4, &e[i]).unwrap();
        assert_eq!(all.duals()[0], pts(1));
        assert_eq!(all.duals()[2], pts(4));
        let e4 = PartialSpread::from_bases(4, &[e[3].clone(), e[0].clone()]).unwrap();
        assert_eq!(e4.duals()[0], pts(3));

        let f1 = ps_general(4, &[e[0].clone(), e[1].clone()]).unwrap();
        assert_eq!(dist_to_dual(&f1, &Pairing::Standard).unwrap(), 0);
        let f3 = ps_general(4, &[e[0].clone(), e[2].clone()]).unwrap();
        assert_eq!(dist_to_dual(&f3, &Pairing::Standard).unwrap(), 12);
        let g2 = ps_general(4, &[e[0].clone(), e[1].clone(), e[2].clone()]).unwrap();
        assert_eq!(dist_to_dual(&g2, &Pairing::Standard).unwrap(), 6);
    }

    #[test]
    fn general_subspace_validation() {
        let e = example_subspaces_n4();
        assert!(matches!(
            ps_general(4, &[e[0].clone(), e[0].clone()]),
            Err(Error::SubspacesIntersect { first: 0, second: 1 })
        ));
        assert!(matches!(ps_general(4, &[e[0].clone()]), Err(Error::SubspaceCount { count: 1, k: 2 })));
        assert!(matches!(ps_general(4, &[vec![1], e[1].clone()]), Err(Error::SubspaceDimension { index: 0, .. })));
        assert!(matches!(ps_general(4, &[vec![1, 2], vec![4, 3]]), Err(Error::SubspacesIntersect { .. })));
        assert!(ps_general(5, &[]).is_err());
    }

    #[test]
    fn bit_vectors_and_line_parsing() {
        assert_eq!(parse_bit_vector("0001").unwrap(), 8);
        assert_eq!(parse_bit_vector("1000").unwrap(), 1);
        assert!(parse_bit_vector("10a0").is_err());
        assert_eq!("inf".parse::<SpreadLine>().unwrap(), SpreadLine::Infinity);
        assert_eq!("5".parse::<SpreadLine>().unwrap(), fin(5));
        assert_eq!("0x5".parse::<SpreadLine>().unwrap(), fin(5));
        assert!("x".parse::<SpreadLine>().is_err());
    }
}
