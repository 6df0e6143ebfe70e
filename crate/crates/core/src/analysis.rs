//! Distance-to-dual identities, closed forms and exhaustive censuses.
//!
//! For a `PS^-` selection `C` of Desarguesian lines, `dist(f, f~)` depends
//! only on how many lines of `C` have their dual line in `C`:
//! `dist = 2 (2^(k-1) - i) (2^k - 1)` and `N_f = 2^n - 2 dist`. The census
//! computes this closed form next to the spectral dual and counts any
//! disagreement.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use num_bigint::BigUint;
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::boolfun::{symmetric_bent, symmetric_value, TruthTable};
use crate::error::{Error, Result};
use crate::field::{FieldCtx, GfElem};
use crate::spectral::{dist_from_nf, dist_to_dual, dist_to_dual_verified, dual, nf_from_dist, rayleigh, wht, Pairing};
use crate::spreads::{
    desarguesian, is_selfdual_selection, ps_minus, psap_from_g, PartialSpread, SpreadKind, SpreadLine, SpreadSelection,
};

/// Largest k for an exhaustive census.
pub const EXHAUSTIVE_MAX_K: u32 = 3;
/// Largest k for a sampled census.
pub const SAMPLE_MAX_K: u32 = 7;

/// The four quantities of the metric identity check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MetricIdentities {
    /// Hamming distance between `f` and its dual.
    pub direct: i64,
    /// `2^(n-1) - 2^(k-1) (-1)^f(0) + 2^-k sum_{u in supp f} W_f(u)`.
    pub form1: i64,
    /// `2^(n-1) - 2^-(k+1) sum_u W_{D_u f}(u) + 2^-k sum_u W_{D_u f}(u)|odd`.
    pub form2: i64,
    /// `2 sum_supp W_f + sum_u W_{D_u f}(u) - 2 sum_u W_{D_u f}(u)|odd - 2^n (-1)^f(0)`.
    pub residual: i64,
}

impl MetricIdentities {
    pub fn consistent(&self) -> bool {
        self.direct == self.form1 && self.direct == self.form2 && self.residual == 0
    }
}

/// Evaluates both distance formulas and the residual identity for a bent `f`.
///
/// The derivative sums use the pairing throughout: the "odd" half is the set
/// `{x : <x, x> = 1}`, which for the standard dot product is the set of
/// odd-weight points.
pub fn metric_identity_check(f: &TruthTable, pairing: &Pairing) -> Result<MetricIdentities> {
    let n = f.n();
    if n % 2 == 1 || n < 4 {
        return Err(Error::OddVariableCount(n));
    }
    let k = n / 2;
    let spec = wht(f, pairing)?;
    let direct = f.hamming_distance(&dual(f, pairing)?)? as i64;
    let f0_sign: i64 = if f.get(0) { -1 } else { 1 };
    let half: i64 = 1 << (n - 1);

    let supp_sum: i64 = f.support().map(|u| spec.get(u)).sum();
    let form1 = half - (1i64 << (k - 1)) * f0_sign + exact_div(supp_sum, 1 << k, "form 1")?;

    let table = pairing.index_table(n)?;
    let signs: Vec<i64> = f.signs();
    let odd: Vec<bool> = (0..f.len()).map(|x| (table[x] & x as u32).count_ones() & 1 == 1).collect();
    let (mut total, mut odd_total) = (0i64, 0i64);
    for (u, &gu) in table.iter().enumerate() {
        for x in 0..f.len() {
            let chi = if (gu & x as u32).count_ones() & 1 == 1 { -1 } else { 1 };
            let term = signs[x] * signs[x ^ u] * chi;
            total += term;
            if odd[x] {
                odd_total += term;
            }
        }
    }
    let form2 = half + exact_div(2 * odd_total - total, 1 << (k + 1), "form 2")?;
    let residual = 2 * supp_sum + total - 2 * odd_total - (1i64 << n) * f0_sign;
    Ok(MetricIdentities { direct, form1, form2, residual })
}

fn exact_div(num: i64, den: i64, what: &str) -> Result<i64> {
    if num % den == 0 {
        Ok(num / den)
    } else {
        Err(Error::Inconsistent(format!("{what}: {num} not divisible by {den}")))
    }
}

fn hits_on_duals(ps: &PartialSpread, f: &TruthTable, skip_origin: bool) -> i64 {
    ps.duals().iter().map(|d| d.iter().filter(|&&x| !(skip_origin && x == 0) && f.get(x)).count() as i64).sum()
}

/// `2^n - 2^k - 2 sum_i |{x in E_i^perp : f(x) = 1}|` for a `PS^-` spread.
pub fn dist_formula_ps_minus(ps: &PartialSpread) -> Result<u64> {
    if ps.kind()? != SpreadKind::Minus {
        let half = 1usize << (ps.k() - 1);
        return Err(Error::SelectionSize { expected: half, actual: ps.members().len() });
    }
    let f = ps.function()?;
    let value = (1i64 << ps.n()) - (1i64 << ps.k()) - 2 * hits_on_duals(ps, &f, false);
    Ok(value as u64)
}

/// `2^n + 2^k - 2 - 2 sum_i |{x in E_i^perp \ {0} : f(x) = 1}|` for a `PS^+` spread.
pub fn dist_formula_ps_plus(ps: &PartialSpread) -> Result<u64> {
    if ps.kind()? != SpreadKind::Plus {
        let half = 1usize << (ps.k() - 1);
        return Err(Error::SelectionSize { expected: half + 1, actual: ps.members().len() });
    }
    let f = ps.function()?;
    let value = (1i64 << ps.n()) + (1i64 << ps.k()) - 2 - 2 * hits_on_duals(ps, &f, true);
    Ok(value as u64)
}

/// Whether `E_1` is selected, and `i = |C ∩ C^perp|`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct IntersectionIndex {
    pub has_e1: bool,
    pub i: u32,
}

pub fn intersection_index(sel: &SpreadSelection) -> IntersectionIndex {
    let dual = sel.dual();
    IntersectionIndex {
        has_e1: sel.contains(SpreadLine::Finite(GfElem::ONE)),
        i: sel.lines().iter().filter(|&&l| dual.contains(l)).count() as u32,
    }
}

/// `2^n - 4 (2^(k-1) - i) (2^k - 1)`.
pub fn nf_for_class(k: u32, i: u32) -> i64 {
    (1i64 << (2 * k)) - 4 * ((1i64 << (k - 1)) - i as i64) * ((1i64 << k) - 1)
}

/// `(2^(k+1) - 2) (2^(k-1) - i)`.
pub fn dist_for_class(k: u32, i: u32) -> u64 {
    ((1u64 << (k + 1)) - 2) * ((1u64 << (k - 1)) - i as u64)
}

/// Closed-form `N_f` of `ps_minus(sel)` from its intersection index.
pub fn nf_formula(sel: &SpreadSelection) -> Result<i64> {
    sel.expect_len(sel.half())?;
    let k = sel.k();
    let idx = intersection_index(sel);
    let nf = if idx.has_e1 {
        // i = 1 + j, E_1 being its own dual
        let j = idx.i as i64 - 1;
        (1i64 << (2 * k)) - 4 * ((1i64 << (k - 1)) - j - 1) * ((1i64 << k) - 1)
    } else {
        nf_for_class(k, idx.i)
    };
    Ok(nf)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CensusMode {
    Exhaustive,
    Sample { count: usize, seed: u64 },
}

impl CensusMode {
    fn name(&self) -> &'static str {
        match self {
            CensusMode::Exhaustive => "exhaustive",
            CensusMode::Sample { .. } => "sample",
        }
    }

    fn max_k(&self) -> u32 {
        match self {
            CensusMode::Exhaustive => EXHAUSTIVE_MAX_K,
            CensusMode::Sample { .. } => SAMPLE_MAX_K,
        }
    }
}

/// In sample mode, every `SPOT_CHECK_STRIDE`-th selection also gets a full
/// spectral dual.
pub const SPOT_CHECK_STRIDE: usize = 8;

/// Realization status of one class `cl(i)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassStatus {
    pub i: u32,
    pub dist: u64,
    pub nf: i64,
    pub count: u64,
    pub status: &'static str,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusReport {
    pub k: u32,
    pub n: u32,
    pub mode: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub reduction_poly: u32,
    pub total_selections: u64,
    /// dist(f, f~) -> number of selections.
    pub class_sizes: BTreeMap<u64, u64>,
    pub selfdual_count: u64,
    pub min_nonzero_dist: Option<u64>,
    pub formula_mismatches: u64,
    pub spectral_checks: u64,
    pub nf_values: Vec<i64>,
    pub classes: Vec<ClassStatus>,
}

impl CensusReport {
    pub fn realized_dists(&self) -> BTreeSet<u64> {
        self.class_sizes.keys().copied().collect()
    }
}

#[derive(Debug, Clone, Copy)]
struct SelectionOutcome {
    dist: u64,
    nf: i64,
    spectral_checked: bool,
    mismatch: bool,
}

fn evaluate_selection(sel: &SpreadSelection, spectral: bool) -> Result<SelectionOutcome> {
    let nf = nf_formula(sel)?;
    let dist = dist_from_nf(sel.n(), nf);
    let counted = dist_formula_ps_minus(&PartialSpread::from_selection(sel))?;
    let mut mismatch = counted != dist || is_selfdual_selection(sel)? != (dist == 0);
    if spectral {
        let f = ps_minus(sel)?;
        let pairing = Pairing::TraceForm(sel.ctx().clone());
        match dist_to_dual_verified(&f, &pairing) {
            Ok((spec, _)) => mismatch |= spec != dist,
            Err(Error::Inconsistent(_)) => mismatch = true,
            Err(e) => return Err(e),
        }
    }
    Ok(SelectionOutcome { dist, nf, spectral_checked: spectral, mismatch })
}

fn enumerate_selections(ctx: &FieldCtx, mode: CensusMode) -> Result<Vec<SpreadSelection>> {
    let lines = desarguesian(ctx);
    let half = 1usize << (ctx.k() - 1);
    match mode {
        CensusMode::Exhaustive => lines.into_iter().combinations(half).map(|c| SpreadSelection::new(ctx, c)).collect(),
        CensusMode::Sample { count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..count)
                .map(|_| {
                    let picked = sample(&mut rng, lines.len(), half).into_iter().map(|i| lines[i]).collect();
                    SpreadSelection::new(ctx, picked)
                })
                .collect()
        }
    }
}

/// Census of `PS^-` selections over the Desarguesian spread.
pub fn census(ctx: &FieldCtx, mode: CensusMode) -> Result<CensusReport> {
    census_with(ctx, mode, true)
}

/// [`census`] with explicit control over parallel evaluation. The report is
/// identical either way.
pub fn census_with(ctx: &FieldCtx, mode: CensusMode, parallel: bool) -> Result<CensusReport> {
    let k = ctx.k();
    if !(2..=mode.max_k()).contains(&k) {
        return Err(Error::CensusRange { k, mode: mode.name(), max: mode.max_k() });
    }
    let selections = enumerate_selections(ctx, mode)?;
    let spectral_for = |idx: usize| match mode {
        CensusMode::Exhaustive => true,
        CensusMode::Sample { .. } => idx.is_multiple_of(SPOT_CHECK_STRIDE),
    };
    let outcomes: Vec<SelectionOutcome> = if parallel {
        selections
            .par_iter()
            .enumerate()
            .map(|(idx, sel)| evaluate_selection(sel, spectral_for(idx)))
            .collect::<Result<_>>()?
    } else {
        selections
            .iter()
            .enumerate()
            .map(|(idx, sel)| evaluate_selection(sel, spectral_for(idx)))
            .collect::<Result<_>>()?
    };

    let n = 2 * k;
    let mut class_sizes = BTreeMap::new();
    let mut nf_values = BTreeSet::new();
    let mut formula_mismatches = 0;
    let mut spectral_checks = 0;
    for o in &outcomes {
        *class_sizes.entry(o.dist).or_insert(0u64) += 1;
        nf_values.insert(o.nf);
        formula_mismatches += o.mismatch as u64;
        spectral_checks += o.spectral_checked as u64;
    }
    let classes = (0..=1u32 << (k - 1))
        .map(|i| {
            let dist = dist_for_class(k, i);
            let count = class_sizes.get(&dist).copied().unwrap_or(0);
            let status = match (mode, count) {
                (_, c) if c > 0 => "verified",
                (CensusMode::Exhaustive, _) => "absent",
                (CensusMode::Sample { .. }, _) => "formula-derived",
            };
            ClassStatus { i, dist, nf: nf_for_class(k, i), count, status }
        })
        .collect();
    Ok(CensusReport {
        k,
        n,
        mode: mode.name(),
        seed: match mode {
            CensusMode::Sample { seed, .. } => Some(seed),
            CensusMode::Exhaustive => None,
        },
        reduction_poly: ctx.reduction_poly(),
        total_selections: outcomes.len() as u64,
        selfdual_count: class_sizes.get(&0).copied().unwrap_or(0),
        min_nonzero_dist: class_sizes.keys().copied().find(|&d| d > 0),
        class_sizes,
        formula_mismatches,
        spectral_checks,
        nf_values: nf_values.into_iter().collect(),
        classes,
    })
}

/// All possible `N_f` and `dist(f, f~)` values for Desarguesian `PS_ap` at `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DistributionRow {
    pub n: u32,
    pub nf_values: Vec<i64>,
    pub dist_values: Vec<u64>,
    /// Set when the row was also checked against an exhaustive census.
    pub census_verified: bool,
}

impl DistributionRow {
    /// `n,N_f,dist` lines sorted by increasing distance.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,N_f,dist\n");
        for &d in &self.dist_values {
            out.push_str(&format!("{},{},{}\n", self.n, nf_from_dist(self.n, d), d));
        }
        out
    }
}

pub fn distribution_table(n: u32) -> Result<DistributionRow> {
    if n % 2 == 1 {
        return Err(Error::OddVariableCount(n));
    }
    if !(4..=24).contains(&n) {
        return Err(Error::VariableCount(n));
    }
    let k = n / 2;
    let mut nf_values: Vec<i64> = (0..=1u32 << (k - 1)).map(|i| nf_for_class(k, i)).collect();
    let mut dist_values: Vec<u64> = (0..=1u32 << (k - 1)).map(|i| dist_for_class(k, i)).collect();
    nf_values.sort_unstable();
    dist_values.sort_unstable();
    let census_verified = if k <= EXHAUSTIVE_MAX_K {
        let report = census(&FieldCtx::with_default(k)?, CensusMode::Exhaustive)?;
        let realized: Vec<u64> = report.realized_dists().into_iter().collect();
        if realized != dist_values || report.nf_values != nf_values {
            return Err(Error::Inconsistent(format!(
                "n = {n}: census realized {realized:?}, formula gives {dist_values:?}"
            )));
        }
        true
    } else {
        false
    };
    Ok(DistributionRow { n, nf_values, dist_values, census_verified })
}

/// Anything that lists attained `N_f` values at a fixed `n`.
pub trait NfSource {
    fn n(&self) -> u32;
    fn nf_values(&self) -> &[i64];
}

impl NfSource for CensusReport {
    fn n(&self) -> u32 {
        self.n
    }
    fn nf_values(&self) -> &[i64] {
        &self.nf_values
    }
}

impl NfSource for DistributionRow {
    fn n(&self) -> u32 {
        self.n
    }
    fn nf_values(&self) -> &[i64] {
        &self.nf_values
    }
}

/// True iff `-2^n` (equivalently `dist = 2^n`) never occurs.
pub fn anti_selfdual_check(src: &impl NfSource) -> bool {
    let anti = -(1i64 << src.n());
    !src.nf_values().contains(&anti)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SelfDualCounts {
    /// `C(2^(k-1), 2^(k-2))`: self-dual selections of `2^(k-1)` spread lines.
    #[serde(serialize_with = "decimal")]
    pub spread_form: BigUint,
    /// `C(2^(k-1) - 1, 2^(k-2))`: self-dual `g(x / y)` with balanced `g`, `g(0) = 0`.
    #[serde(serialize_with = "decimal")]
    pub g_form: BigUint,
}

fn decimal<S: serde::Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

fn binomial(n: u64, r: u64) -> BigUint {
    if r > n {
        return BigUint::from(0u32);
    }
    let r = r.min(n - r);
    (0..r).fold(BigUint::from(1u32), |acc, i| acc * (n - i) / (i + 1))
}

pub fn selfdual_counts(k: u32) -> Result<SelfDualCounts> {
    if k < 2 {
        return Err(Error::CensusRange { k, mode: "self-dual count", max: u32::MAX });
    }
    let half = 1u64 << (k - 1);
    let quarter = 1u64 << (k - 2);
    Ok(SelfDualCounts { spread_form: binomial(half, quarter), g_form: binomial(half - 1, quarter) })
}

/// All balanced `g` on `k` variables with `g(0) = 0`.
pub fn dillon_gs(k: u32) -> Result<Vec<TruthTable>> {
    (1..1u32 << k).combinations(1 << (k - 1)).map(|supp| TruthTable::from_support(k, supp)).collect()
}

/// Exhaustively counts self-dual `PS^-` selections (spectral dual).
pub fn count_selfdual_selections(ctx: &FieldCtx) -> Result<u64> {
    if ctx.k() > EXHAUSTIVE_MAX_K {
        return Err(Error::CensusRange { k: ctx.k(), mode: "exhaustive", max: EXHAUSTIVE_MAX_K });
    }
    let pairing = Pairing::TraceForm(ctx.clone());
    let mut count = 0;
    for lines in desarguesian(ctx).into_iter().combinations(1 << (ctx.k() - 1)) {
        let f = ps_minus(&SpreadSelection::new(ctx, lines)?)?;
        count += (dist_to_dual(&f, &pairing)? == 0) as u64;
    }
    Ok(count)
}

/// Exhaustively counts self-dual `g(x / y)` functions (spectral dual).
pub fn count_selfdual_g(ctx: &FieldCtx) -> Result<u64> {
    if ctx.k() > EXHAUSTIVE_MAX_K {
        return Err(Error::CensusRange { k: ctx.k(), mode: "exhaustive", max: EXHAUSTIVE_MAX_K });
    }
    let pairing = Pairing::TraceForm(ctx.clone());
    let mut count = 0;
    for g in dillon_gs(ctx.k())? {
        count += (dist_to_dual(&psap_from_g(ctx, &g)?, &pairing)? == 0) as u64;
    }
    Ok(count)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct KloostermanSum {
    /// `sum_{u != 0} (-1)^(g(u) + g(1/u))`.
    pub nonzero: i64,
    /// Same sum including `u = 0` under `1/0 = 0`.
    pub with_zero: i64,
}

pub fn kloosterman_sum(ctx: &FieldCtx, g: &TruthTable) -> Result<KloostermanSum> {
    if g.n() != ctx.k() {
        return Err(Error::SizeMismatch { left: ctx.k(), right: g.n() });
    }
    let term = |u: GfElem| {
        let inv = ctx.div_conv(GfElem::ONE, u);
        if g.get(u.0) ^ g.get(inv.0) {
            -1
        } else {
            1
        }
    };
    let nonzero: i64 = ctx.elements().skip(1).map(term).sum();
    Ok(KloostermanSum { nonzero, with_zero: nonzero + term(GfElem::ZERO) })
}

/// `N_f` of `g(x / y)` against the character-sum expressions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CharSumReport {
    pub k: u32,
    pub k_nonzero: i64,
    pub k_withzero: i64,
    pub nf_actual: i64,
    /// `2^k + 2^(k-1) K` with `K` over nonzero `u`.
    pub stated_formula_nonzero: i64,
    /// `2^k + 2^(k-1) K` with `K` including `u = 0`.
    pub stated_formula_withzero: i64,
    pub stated_matches_nonzero: bool,
    pub stated_matches_withzero: bool,
    /// `2^n - (2^k - 1)^2 + (2^k - 1) K` with `K` over nonzero `u`.
    pub derived_formula_value: i64,
    pub derived_matches: bool,
}

pub fn rayleigh_vs_charsum(ctx: &FieldCtx, g: &TruthTable) -> Result<CharSumReport> {
    let f = psap_from_g(ctx, g)?;
    let nf_actual = rayleigh(&f, &Pairing::TraceForm(ctx.clone()))?.n;
    let ks = kloosterman_sum(ctx, g)?;
    let k = ctx.k();
    let q = 1i64 << k;
    let stated = |kg: i64| q + (q / 2) * kg;
    let derived_formula_value = q * q - (q - 1) * (q - 1) + (q - 1) * ks.nonzero;
    Ok(CharSumReport {
        k,
        k_nonzero: ks.nonzero,
        k_withzero: ks.with_zero,
        nf_actual,
        stated_formula_nonzero: stated(ks.nonzero),
        stated_formula_withzero: stated(ks.with_zero),
        stated_matches_nonzero: stated(ks.nonzero) == nf_actual,
        stated_matches_withzero: stated(ks.with_zero) == nf_actual,
        derived_formula_value,
        derived_matches: derived_formula_value == nf_actual,
    })
}

/// One symmetric bent function checked against the closed-form dual and the
/// `N_f` case table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SymmetricRecord {
    pub n: u32,
    pub eps1: bool,
    pub eps2: bool,
    pub dual_formula_ok: bool,
    /// First point where the closed-form dual disagrees with the spectrum.
    pub dual_counterexample: Option<u32>,
    pub nf_actual: i64,
    pub nf_predicted: i64,
    pub nf_prediction_ok: bool,
}

/// Closed-form dual of the symmetric bent function at a point of weight `w`.
pub fn symmetric_dual_value(n: u32, w: u32, eps1: bool, eps2: bool) -> bool {
    let c = |w: u32| symmetric_value(w, eps1, eps2);
    let parity = |v: u32| v & 1 == 1;
    if (n / 2).is_multiple_of(2) {
        parity(w) ^ c(w) ^ parity(n / 4)
    } else if w < n {
        parity(w) ^ c(w + 1) ^ parity(n / 4)
    } else {
        parity(n + 1) ^ c(1) ^ parity(n / 4)
    }
}

/// Predicted `N_f`: 0 when `n/2` is even, otherwise `+-2^n` by the parity of
/// `floor(n/4)` and whether `c_0 = c_1`.
pub fn symmetric_nf_prediction(n: u32, eps1: bool, eps2: bool) -> i64 {
    if (n / 2).is_multiple_of(2) {
        return 0;
    }
    let c_equal = symmetric_value(0, eps1, eps2) == symmetric_value(1, eps1, eps2);
    let q_even = (n / 4).is_multiple_of(2);
    if q_even == c_equal {
        1 << n
    } else {
        -(1 << n)
    }
}

pub fn symmetric_report(n: u32) -> Result<Vec<SymmetricRecord>> {
    if n % 2 == 1 {
        return Err(Error::OddVariableCount(n));
    }
    if !(4..=24).contains(&n) {
        return Err(Error::VariableCount(n));
    }
    [(false, false), (false, true), (true, false), (true, true)]
        .into_iter()
        .map(|(eps1, eps2)| {
            let f = symmetric_bent(n, eps1, eps2)?;
            let d = dual(&f, &Pairing::Standard)?;
            let dual_counterexample =
                (0..f.len() as u32).find(|&x| d.get(x) != symmetric_dual_value(n, x.count_ones(), eps1, eps2));
            let nf_actual = rayleigh(&f, &Pairing::Standard)?.n;
            let nf_predicted = symmetric_nf_prediction(n, eps1, eps2);
            Ok(SymmetricRecord {
                n,
                eps1,
                eps2,
                dual_formula_ok: dual_counterexample.is_none(),
                dual_counterexample,
                nf_actual,
                nf_predicted,
                nf_prediction_ok: nf_actual == nf_predicted,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolfun::{mm_bent, Permutation};
    use crate::spreads::{example_subspaces_n4, selection_from_g};

    fn ctx(k: u32) -> FieldCtx {
        FieldCtx::with_default(k).unwrap()
    }

    fn fin(a: u32) -> SpreadLine {
        SpreadLine::Finite(GfElem(a))
    }

    #[test]
    fn metric_identities_selfdual_example() {
        let f = TruthTable::from_fn(4, |p| ((p & 1 != 0) && (p & 4 != 0)) ^ ((p & 2 != 0) && (p & 8 != 0))).unwrap();
        let m = metric_identity_check(&f, &Pairing::Standard).unwrap();
        assert_eq!(m, MetricIdentities { direct: 0, form1: 0, form2: 0, residual: 0 });
        assert!(metric_identity_check(&TruthTable::zeros(4).unwrap(), &Pairing::Standard).is_err());
    }

    #[test]
    fn metric_identities_mm_sample() {
        let pi = Permutation::new(vec![5, 2, 7, 0, 1, 6, 3, 4]).unwrap();
        let g = TruthTable::from_support(3, [0, 3, 5]).unwrap();
        let f = mm_bent(&pi, &g).unwrap();
        let m = metric_identity_check(&f, &Pairing::Standard).unwrap();
        assert!(m.consistent(), "{m:?}");
        assert_eq!(m.direct as u64, dist_to_dual(&f, &Pairing::Standard).unwrap());
    }

    #[test]
    fn ps_minus_formula_examples() {
        let c = ctx(2);
        let sel = SpreadSelection::new(&c, vec![fin(2), fin(3)]).unwrap();
        assert_eq!(dist_formula_ps_minus(&PartialSpread::from_selection(&sel)).unwrap(), 0);
        let e = example_subspaces_n4();
        let f2 = PartialSpread::from_bases(4, &[e[2].clone(), e[3].clone()]).unwrap();
        assert_eq!(dist_formula_ps_minus(&f2).unwrap(), 6);
        assert!(dist_formula_ps_plus(&f2).is_err());
    }

    #[test]
    fn ps_plus_formula_examples() {
        let e = example_subspaces_n4();
        let g2 = PartialSpread::from_bases(4, &[e[0].clone(), e[1].clone(), e[2].clone()]).unwrap();
        assert_eq!(dist_formula_ps_plus(&g2).unwrap(), 6);
        let g3 = PartialSpread::from_bases(4, &[e[0].clone(), e[2].clone(), e[3].clone()]).unwrap();
        assert_eq!(dist_formula_ps_plus(&g3).unwrap(), 12);
        let g1 = PartialSpread::from_bases(4, &[e[0].clone(), e[1].clone(), e[3].clone()]).unwrap();
        assert_eq!(dist_formula_ps_plus(&g1).unwrap(), 0);
        assert!(dist_formula_ps_minus(&g1).is_err());
    }

    #[test]
    fn intersection_index_examples() {
        let c = ctx(2);
        let sd = SpreadSelection::new(&c, vec![fin(2), fin(3)]).unwrap();
        assert_eq!(intersection_index(&sd), IntersectionIndex { has_e1: false, i: 2 });
        let s = SpreadSelection::new(&c, vec![fin(0), fin(2)]).unwrap();
        assert_eq!(intersection_index(&s), IntersectionIndex { has_e1: false, i: 0 });
        let s = SpreadSelection::new(&c, vec![fin(1), fin(0)]).unwrap();
        assert_eq!(intersection_index(&s), IntersectionIndex { has_e1: true, i: 1 });
    }

    #[test]
    fn nf_formula_examples() {
        assert_eq!(nf_for_class(2, 0), -8);
        assert_eq!(nf_for_class(3, 1), -20);
        for k in 2..=8 {
            assert_eq!(nf_for_class(k, 1 << (k - 1)), 1 << (2 * k));
        }
        let c = ctx(2);
        let s = SpreadSelection::new(&c, vec![fin(0), fin(2)]).unwrap();
        assert_eq!(nf_formula(&s).unwrap(), -8);
        let s = SpreadSelection::new(&c, vec![fin(1), fin(0)]).unwrap();
        assert_eq!(nf_formula(&s).unwrap(), 4);
    }

    #[test]
    fn census_k2() {
        let r = census(&ctx(2), CensusMode::Exhaustive).unwrap();
        assert_eq!(r.total_selections, 10);
        assert_eq!(r.selfdual_count, 2);
        assert_eq!(r.class_sizes, BTreeMap::from([(0, 2), (6, 4), (12, 4)]));
        assert_eq!(r.min_nonzero_dist, Some(6));
        assert_eq!(r.formula_mismatches, 0);
        assert_eq!(r.spectral_checks, 10);
        assert!(anti_selfdual_check(&r));
    }

    #[test]
    fn census_range_errors() {
        assert!(matches!(census(&ctx(4), CensusMode::Exhaustive), Err(Error::CensusRange { k: 4, .. })));
        assert!(census(&ctx(8), CensusMode::Sample { count: 1, seed: 0 }).is_err());
        assert!(census(&FieldCtx::with_default(1).unwrap(), CensusMode::Exhaustive).is_err());
    }

    #[test]
    fn census_parallel_matches_serial() {
        for mode in [CensusMode::Exhaustive, CensusMode::Sample { count: 40, seed: 7 }] {
            let c = ctx(3);
            assert_eq!(census_with(&c, mode, true).unwrap(), census_with(&c, mode, false).unwrap());
        }
    }

    #[test]
    fn census_sample_is_seeded() {
        let c = ctx(4);
        let a = census(&c, CensusMode::Sample { count: 50, seed: 11 }).unwrap();
        let b = census(&c, CensusMode::Sample { count: 50, seed: 11 }).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.seed, Some(11));
        assert_eq!(a.formula_mismatches, 0);
        assert_eq!(a.spectral_checks, 7);
        assert!(a.classes.iter().all(|c| c.status == "verified" || c.status.starts_with("formula")));
    }

    #[test]
    fn distribution_rows() {
        let r = distribution_table(4).unwrap();
        assert_eq!(r.dist_values, vec![0, 6, 12]);
        assert_eq!(r.nf_values, vec![-8, 4, 16]);
        assert!(r.census_verified);
        assert_eq!(r.to_csv(), "n,N_f,dist\n4,16,0\n4,4,6\n4,-8,12\n");
        let r = distribution_table(8).unwrap();
        assert_eq!(r.nf_values, vec![-224, -164, -104, -44, 16, 76, 136, 196, 256]);
        assert!(!r.census_verified);
        let r = distribution_table(14).unwrap();
        assert_eq!(r.dist_values.len(), 65);
        assert!(r.dist_values.windows(2).all(|w| w[1] - w[0] == 254));
        assert_eq!(*r.dist_values.last().unwrap(), 16256);
        assert!(distribution_table(7).is_err());
        assert!(distribution_table(26).is_err());
        assert!(distribution_table(2).is_err());
    }

    #[test]
    fn selfdual_count_values() {
        let c = selfdual_counts(2).unwrap();
        assert_eq!((c.spread_form, c.g_form), (2u32.into(), 1u32.into()));
        let c = selfdual_counts(3).unwrap();
        assert_eq!((c.spread_form, c.g_form), (6u32.into(), 3u32.into()));
        let c = selfdual_counts(4).unwrap();
        assert_eq!((c.spread_form, c.g_form), (70u32.into(), 35u32.into()));
        assert!(selfdual_counts(1).is_err());
        // C(128, 64) at k = 8 needs more than 64 bits
        assert!(selfdual_counts(8).unwrap().spread_form > BigUint::from(u64::MAX));
        assert_eq!(count_selfdual_selections(&ctx(2)).unwrap(), 2);
        assert_eq!(count_selfdual_g(&ctx(2)).unwrap(), 1);
    }

    #[test]
    fn kloosterman_examples() {
        let c = ctx(2);
        let zero = TruthTable::zeros(2).unwrap();
        assert_eq!(kloosterman_sum(&c, &zero).unwrap().nonzero, 3);
        let g = TruthTable::from_support(2, [2, 3]).unwrap();
        let ks = kloosterman_sum(&c, &g).unwrap();
        assert_eq!(ks, KloostermanSum { nonzero: 3, with_zero: 4 });
    }

    #[test]
    fn charsum_examples() {
        let c = ctx(2);
        let g = TruthTable::from_support(2, [2, 3]).unwrap();
        let r = rayleigh_vs_charsum(&c, &g).unwrap();
        assert_eq!(r.nf_actual, 16);
        assert_eq!(r.stated_formula_nonzero, 10);
        assert!(!r.stated_matches_nonzero);
        assert_eq!(r.derived_formula_value, 16);
        assert!(r.derived_matches);
        let g = TruthTable::from_support(2, [1, 2]).unwrap();
        let r = rayleigh_vs_charsum(&c, &g).unwrap();
        assert_eq!((r.nf_actual, r.k_nonzero, r.derived_formula_value), (4, -1, 4));
        assert!(rayleigh_vs_charsum(&c, &TruthTable::zeros(2).unwrap()).is_err());
        assert_eq!(selection_from_g(&c, &g).unwrap().len(), 2);
    }

    #[test]
    fn symmetric_records() {
        for rec in symmetric_report(4).unwrap() {
            assert_eq!(rec.nf_actual, 0);
            assert!(rec.dual_formula_ok && rec.nf_prediction_ok);
        }
        for rec in symmetric_report(6).unwrap() {
            let expect = if rec.eps1 { 64 } else { -64 };
            assert_eq!(rec.nf_actual, expect);
            assert!(rec.dual_formula_ok && rec.nf_prediction_ok);
        }
        assert!(symmetric_report(5).is_err());
    }
}
