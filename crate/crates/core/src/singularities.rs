//! Spectral pairs of isolated hypersurface singularities and the signature
//! corrections they induce on degree-zero L-classes of singular hypersurfaces.
//!
//! A germ of dimension `n` (so `n + 1` variables) has vanishing cohomology
//! `V = V_1 + V_{!=1}` split by the eigenvalue of the semisimple monodromy.
//! Each spectral pair `(alpha, w)` sits in the unipotent sector when `alpha`
//! is an integer, at Hodge level `p = n + 1 - alpha`, and in the non-unipotent
//! sector otherwise, at level `p = n - floor(alpha)`. The weight filtration
//! is the monodromy filtration centered at `n + 1` (unipotent) or `n`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::charclass::{lclass_hypersurface_pushforward, ClassError};
use crate::exactq::rational::{self, rat, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SingularityError {
    #[error("Brieskorn-Pham exponents must all be at least 2, got {0}")]
    ExponentTooSmall(u32),
    #[error("at least one exponent is required")]
    NoExponents,
    #[error("spectral number {alpha} lies outside (0, {upper})")]
    AlphaOutOfRange { alpha: String, upper: u32 },
    #[error("multiplicity must be positive")]
    ZeroMultiplicity,
    #[error("weight {weight} of spectral number {alpha} breaks the quasi-homogeneous weight rule")]
    WeightRule { alpha: String, weight: i64 },
    #[error("Thom-Sebastiani join needs quasi-homogeneous spectra")]
    UnsupportedJoin,
    #[error("spectral pairs are not compatible with a monodromy weight filtration: {0}")]
    InconsistentWeights(String),
    #[error("germ of dimension {found} on a hypersurface of dimension {expected}")]
    DimensionMismatch { expected: u32, found: u32 },
    #[error("malformed spectral pair file: {0}")]
    Format(String),
    #[error(transparent)]
    Class(#[from] ClassError),
}

/// The Brieskorn-Pham germ `x_1^{a_1} + ... + x_{n+1}^{a_{n+1}}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BpSpec {
    exponents: Vec<u32>,
}

impl BpSpec {
    pub fn new(exponents: Vec<u32>) -> Result<Self, SingularityError> {
        if exponents.is_empty() {
            return Err(SingularityError::NoExponents);
        }
        if let Some(&a) = exponents.iter().find(|&&a| a < 2) {
            return Err(SingularityError::ExponentTooSmall(a));
        }
        Ok(BpSpec { exponents })
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    /// Germ dimension `n`: number of variables minus one.
    pub fn dim(&self) -> u32 {
        self.exponents.len() as u32 - 1
    }

    /// `prod (a_i - 1)`.
    pub fn milnor_number(&self) -> u64 {
        self.exponents.iter().map(|&a| a as u64 - 1).product()
    }

    pub fn label(&self) -> String {
        let parts: Vec<String> = self.exponents.iter().map(u32::to_string).collect();
        format!("bp({})", parts.join(","))
    }
}

/// One entry of a spectral pair multiset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectralPair {
    pub alpha: Rational,
    pub weight: i64,
    pub mult: u64,
}

/// Weight of a quasi-homogeneous spectral pair: `n + 1` for integral `alpha`, `n` otherwise.
pub fn quasi_homogeneous_weight(n: u32, alpha: &Rational) -> i64 {
    if alpha.is_integer() {
        n as i64 + 1
    } else {
        n as i64
    }
}

/// Multiset of spectral pairs of a germ of dimension `n`, kept in canonical
/// order (ascending `alpha`, then ascending weight).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectralPairSet {
    n: u32,
    pairs: BTreeMap<(Rational, i64), u64>,
    quasi_homogeneous: bool,
}

impl SpectralPairSet {
    /// The smooth point: empty vanishing cohomology.
    pub fn empty(n: u32) -> Self {
        SpectralPairSet {
            n,
            pairs: BTreeMap::new(),
            quasi_homogeneous: true,
        }
    }

    /// A set with explicit weights, e.g. read from a file. No weight rule is assumed.
    pub fn from_pairs<I>(n: u32, pairs: I) -> Result<Self, SingularityError>
    where
        I: IntoIterator<Item = SpectralPair>,
    {
        let mut set = SpectralPairSet {
            n,
            pairs: BTreeMap::new(),
            quasi_homogeneous: false,
        };
        for p in pairs {
            set.insert_checked(p)?;
        }
        Ok(set)
    }

    /// A set whose weights follow the quasi-homogeneous rule; weights are checked.
    pub fn quasi_homogeneous<I>(n: u32, pairs: I) -> Result<Self, SingularityError>
    where
        I: IntoIterator<Item = SpectralPair>,
    {
        let mut set = SpectralPairSet::from_pairs(n, pairs)?;
        for (alpha, w) in set.pairs.keys() {
            if *w != quasi_homogeneous_weight(n, alpha) {
                return Err(SingularityError::WeightRule {
                    alpha: rational::to_text(alpha),
                    weight: *w,
                });
            }
        }
        set.quasi_homogeneous = true;
        Ok(set)
    }

    fn insert_checked(&mut self, p: SpectralPair) -> Result<(), SingularityError> {
        if p.mult == 0 {
            return Err(SingularityError::ZeroMultiplicity);
        }
        if p.alpha <= rat(0) || p.alpha >= rat(self.n as i64 + 1) {
            return Err(SingularityError::AlphaOutOfRange {
                alpha: rational::to_text(&p.alpha),
                upper: self.n + 1,
            });
        }
        *self.pairs.entry((p.alpha, p.weight)).or_insert(0) += p.mult;
        Ok(())
    }

    /// Spectrum `{k/a : 1 <= k < a}` of `x^a`, a germ of dimension 0.
    pub fn one_variable(a: u32) -> Result<Self, SingularityError> {
        BpSpec::new(vec![a])?;
        let mut set = SpectralPairSet::empty(0);
        for k in 1..a {
            let alpha = Rational::new(BigInt::from(k), BigInt::from(a));
            let w = quasi_homogeneous_weight(0, &alpha);
            *set.pairs.entry((alpha, w)).or_insert(0) += 1;
        }
        Ok(set)
    }

    pub fn dim(&self) -> u32 {
        self.n
    }

    pub fn is_quasi_homogeneous(&self) -> bool {
        self.quasi_homogeneous
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Total multiplicity.
    pub fn milnor_number(&self) -> u64 {
        self.pairs.values().sum()
    }

    pub fn pairs(&self) -> impl Iterator<Item = SpectralPair> + '_ {
        self.pairs.iter().map(|((alpha, weight), &mult)| SpectralPair {
            alpha: alpha.clone(),
            weight: *weight,
            mult,
        })
    }

    /// Invariance under `alpha -> n + 1 - alpha` with the weight kept.
    pub fn is_symmetric(&self) -> bool {
        let top = rat(self.n as i64 + 1);
        self.pairs
            .iter()
            .all(|((a, w), m)| self.pairs.get(&(&top - a, *w)) == Some(m))
    }

    pub fn to_file(&self) -> SpectralPairFile {
        SpectralPairFile {
            n: self.n,
            weight_rule: Some(if self.quasi_homogeneous {
                WeightRule::QuasiHomogeneous
            } else {
                WeightRule::Explicit
            }),
            pairs: self
                .pairs()
                .map(|p| PairEntry {
                    alpha: rational::to_text(&p.alpha),
                    weight: p.weight,
                    mult: p.mult,
                })
                .collect(),
        }
    }

    pub fn from_file(file: &SpectralPairFile) -> Result<Self, SingularityError> {
        let pairs = file
            .pairs
            .iter()
            .map(|e| {
                Ok(SpectralPair {
                    alpha: rational::parse(&e.alpha)
                        .map_err(|err| SingularityError::Format(err.to_string()))?,
                    weight: e.weight,
                    mult: e.mult,
                })
            })
            .collect::<Result<Vec<_>, SingularityError>>()?;
        match file.weight_rule.unwrap_or(WeightRule::Explicit) {
            WeightRule::QuasiHomogeneous => SpectralPairSet::quasi_homogeneous(file.n, pairs),
            WeightRule::Explicit => SpectralPairSet::from_pairs(file.n, pairs),
        }
    }

    pub fn from_json(text: &str) -> Result<Self, SingularityError> {
        let file: SpectralPairFile =
            serde_json::from_str(text).map_err(|e| SingularityError::Format(e.to_string()))?;
        let set = SpectralPairSet::from_file(&file)?;
        sector_table(&set).check_structure()?;
        Ok(set)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("plain data serializes")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WeightRule {
    QuasiHomogeneous,
    Explicit,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairEntry {
    pub alpha: String,
    pub weight: i64,
    pub mult: u64,
}

/// On-disk form of a [`SpectralPairSet`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectralPairFile {
    pub n: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weight_rule: Option<WeightRule>,
    pub pairs: Vec<PairEntry>,
}

/// Spectral pairs of a Brieskorn-Pham germ: all sums `sum k_i / a_i` with
/// `1 <= k_i < a_i`.
pub fn bp_spectral_pairs(spec: &BpSpec) -> SpectralPairSet {
    let lcm = spec
        .exponents
        .iter()
        .fold(1u64, |acc, &a| acc.lcm(&(a as u64)));
    // numerator of alpha over the common denominator -> multiplicity
    let mut counts: BTreeMap<u64, u64> = BTreeMap::from([(0, 1)]);
    for &a in &spec.exponents {
        let step = lcm / a as u64;
        let mut next = BTreeMap::new();
        for (&s, &c) in &counts {
            for k in 1..a as u64 {
                *next.entry(s + k * step).or_insert(0) += c;
            }
        }
        counts = next;
    }
    let n = spec.dim();
    let mut set = SpectralPairSet::empty(n);
    for (s, c) in counts {
        let alpha = Rational::new(BigInt::from(s), BigInt::from(lcm));
        let w = quasi_homogeneous_weight(n, &alpha);
        set.pairs.insert((alpha, w), c);
    }
    set
}

/// Thom-Sebastiani join `f(x) + g(y)`: spectral numbers add, the dimension
/// becomes `n1 + n2 + 1`, and weights follow the quasi-homogeneous rule.
pub fn ts_join(
    s1: &SpectralPairSet,
    s2: &SpectralPairSet,
) -> Result<SpectralPairSet, SingularityError> {
    if !s1.quasi_homogeneous || !s2.quasi_homogeneous {
        return Err(SingularityError::UnsupportedJoin);
    }
    let n = s1.n + s2.n + 1;
    let mut set = SpectralPairSet::empty(n);
    for ((a1, _), m1) in &s1.pairs {
        for ((a2, _), m2) in &s2.pairs {
            let alpha = a1 + a2;
            let w = quasi_homogeneous_weight(n, &alpha);
            *set.pairs.entry((alpha, w)).or_insert(0) += m1 * m2;
        }
    }
    Ok(set)
}

/// Hodge-level/weight dimension table of one eigenvalue sector.
pub type LevelTable = BTreeMap<(i64, i64), i64>;

/// Dimensions of `Gr_F^p Gr^W_w` per eigenvalue sector, with the N-primitive parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SectorTable {
    pub n: u32,
    /// `(p, w) -> dim` for the eigenvalue-1 part.
    pub unipotent: LevelTable,
    /// `(p, w) -> dim` for the other eigenvalues.
    pub nonunipotent: LevelTable,
    /// `(p, w) -> dim Gr_F^p P_N Gr^W_w V_1`, `w >= n + 1`.
    pub primitive_unipotent: LevelTable,
    /// `(p, w) -> dim Gr_F^p P_N Gr^W_w V_{!=1}`, `w >= n`.
    pub primitive_nonunipotent: LevelTable,
}

fn lookup(t: &LevelTable, p: i64, w: i64) -> i64 {
    t.get(&(p, w)).copied().unwrap_or(0)
}

/// `dim Gr_F^p P_N Gr^W_{c+k} = dim Gr_F^p Gr^W_{c+k} - dim Gr_F^{p+1} Gr^W_{c+k+2}` for `k >= 0`.
fn primitive_part(full: &LevelTable, center: i64) -> LevelTable {
    let mut keys: Vec<(i64, i64)> = Vec::new();
    for &(p, w) in full.keys() {
        if w >= center {
            keys.push((p, w));
        }
        if w - 2 >= center {
            keys.push((p - 1, w - 2));
        }
    }
    keys.sort();
    keys.dedup();
    keys.into_iter()
        .filter_map(|(p, w)| {
            let v = lookup(full, p, w) - lookup(full, p + 1, w + 2);
            (v != 0).then_some(((p, w), v))
        })
        .collect()
}

/// `sum_{k} dim Gr_F^{p+k} P_N Gr^W_{w+2k}` over the `k` for which `N^k` does
/// not kill the primitive piece.
fn recovered(primitive: &LevelTable, center: i64, p: i64, w: i64) -> i64 {
    primitive
        .iter()
        .filter(|(&(pp, ww), _)| {
            let k = pp - p;
            k >= 0 && ww == w + 2 * k && w + k >= center
        })
        .map(|(_, &v)| v)
        .sum()
}

impl SectorTable {
    pub fn unipotent_center(&self) -> i64 {
        self.n as i64 + 1
    }

    pub fn nonunipotent_center(&self) -> i64 {
        self.n as i64
    }

    pub fn total_dim(&self) -> i64 {
        self.unipotent.values().chain(self.nonunipotent.values()).sum()
    }

    /// Verifies that the tables come from an `sl_2`-type weight filtration:
    /// primitive parts are nonnegative and reassemble every graded piece.
    pub fn check_structure(&self) -> Result<(), SingularityError> {
        let sectors = [
            ("unipotent", &self.unipotent, &self.primitive_unipotent, self.unipotent_center()),
            (
                "non-unipotent",
                &self.nonunipotent,
                &self.primitive_nonunipotent,
                self.nonunipotent_center(),
            ),
        ];
        for (name, full, prim, center) in sectors {
            if let Some(((p, w), v)) = prim.iter().find(|(_, &v)| v < 0) {
                return Err(SingularityError::InconsistentWeights(format!(
                    "{name} primitive dimension {v} at p={p}, w={w}"
                )));
            }
            let mut keys: Vec<(i64, i64)> = full.keys().copied().collect();
            for &(p, w) in prim.keys() {
                let mut k = 0;
                while w - 2 * k >= 2 * center - w {
                    keys.push((p - k, w - 2 * k));
                    k += 1;
                }
            }
            for (p, w) in keys {
                let got = recovered(prim, center, p, w);
                let want = lookup(full, p, w);
                if got != want {
                    return Err(SingularityError::InconsistentWeights(format!(
                        "{name} Gr^W_{w} at level {p} has dimension {want} but the primitive decomposition gives {got}"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Sorts spectral pairs into eigenvalue sectors by Hodge level and weight.
pub fn sector_table(sp: &SpectralPairSet) -> SectorTable {
    let n = sp.n as i64;
    let mut unipotent = LevelTable::new();
    let mut nonunipotent = LevelTable::new();
    for ((alpha, w), &mult) in &sp.pairs {
        let (table, p) = if alpha.is_integer() {
            let a = alpha.to_integer().to_i64().expect("small spectral number");
            (&mut unipotent, n + 1 - a)
        } else {
            let fl = alpha.floor().to_integer().to_i64().expect("small spectral number");
            (&mut nonunipotent, n - fl)
        };
        *table.entry((p, *w)).or_insert(0) += mult as i64;
    }
    let primitive_unipotent = primitive_part(&unipotent, n + 1);
    let primitive_nonunipotent = primitive_part(&nonunipotent, n);
    SectorTable {
        n: sp.n,
        unipotent,
        nonunipotent,
        primitive_unipotent,
        primitive_nonunipotent,
    }
}

/// Hodge signatures `sigma(P_N Gr^W_j V_1)` and `sigma(P_N Gr^W_j V_{!=1})`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SigmaTable {
    entries: BTreeMap<i64, (i64, i64)>,
}

impl SigmaTable {
    pub fn sigma_1(&self, j: i64) -> i64 {
        self.entries.get(&j).map_or(0, |e| e.0)
    }

    pub fn sigma_ne1(&self, j: i64) -> i64 {
        self.entries.get(&j).map_or(0, |e| e.1)
    }

    /// Nonzero-supported weights in ascending order with `(sigma_1, sigma_ne1)`.
    pub fn entries(&self) -> impl Iterator<Item = (i64, (i64, i64))> + '_ {
        self.entries.iter().map(|(&j, &v)| (j, v))
    }
}

fn hodge_sign(p: i64) -> i64 {
    if p.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

pub fn sigma_table(t: &SectorTable) -> SigmaTable {
    let mut entries: BTreeMap<i64, (i64, i64)> = BTreeMap::new();
    for (&(p, w), &v) in &t.primitive_unipotent {
        entries.entry(w).or_default().0 += hodge_sign(p) * v;
    }
    for (&(p, w), &v) in &t.primitive_nonunipotent {
        entries.entry(w).or_default().1 += hodge_sign(p) * v;
    }
    SigmaTable { entries }
}

/// Weight-graded Hodge dimensions of `H^{n-1}` of the link:
/// `Gr^W_{n-1-k} = (P_N Gr^W_{n+1+k} V_1)(k+1)`.
pub fn link_cohomology(t: &SectorTable) -> BTreeMap<i64, BTreeMap<i64, i64>> {
    let n = t.n as i64;
    let mut out: BTreeMap<i64, BTreeMap<i64, i64>> = BTreeMap::new();
    for (&(p, w), &v) in &t.primitive_unipotent {
        let k = w - (n + 1);
        if k < 0 || v == 0 {
            continue;
        }
        *out.entry(n - 1 - k).or_default().entry(p - (k + 1)).or_insert(0) += v;
    }
    out
}

/// Reduced modified Hodge signature of an isolated hypersurface singularity.
///
/// The stalk cohomology is `Q` in degree 0 (cancelling the `-1`) and the link
/// cohomology in degree `n - 1`; only its even weights contribute, each class
/// of level `p` with sign `(-1)^{n-1+p}`.
pub fn sigma_tilde(t: &SectorTable) -> i64 {
    let degree = t.n as i64 - 1;
    link_cohomology(t)
        .iter()
        .filter(|(w, _)| w.rem_euclid(2) == 0)
        .flat_map(|(_, levels)| levels.iter())
        .map(|(&p, &v)| hodge_sign(degree + p) * v)
        .sum()
}

/// Per-singularity data entering the degree-zero corrections.
#[derive(Debug, Clone, PartialEq)]
pub struct SingularityContribution {
    pub milnor_number: u64,
    pub sigmas: SigmaTable,
    pub sigma_tilde: i64,
    /// `sum_k (-1)^{k+1} sigma_1^{n+1+k}`.
    pub constant_minus_ic: i64,
    /// `sum_k sigma_1^{n+1+2k} + sigma_{!=1}^{n+2k}`.
    pub smooth_minus_constant: i64,
    /// `sum_k sigma_1^{n+2+2k} + sigma_{!=1}^{n+2k}`.
    pub smooth_minus_ic: i64,
}

/// Degree-zero and higher L-classes of a degree-`d` hypersurface in `P^(n+1)`
/// with the given isolated singularities.
#[derive(Debug, Clone, PartialEq)]
pub struct Theorem3Report {
    pub n: u32,
    pub d: u32,
    pub singularities: Vec<SingularityContribution>,
    /// `L_0(Z)` of a smooth member of the linear system.
    pub l0_smooth: Rational,
    /// `L_0^c(X)`.
    pub l0_constant: Rational,
    /// `L_0(X)`, the intersection complex class.
    pub l0_ic: Rational,
    pub constant_minus_ic: i64,
    pub smooth_minus_constant: i64,
    pub smooth_minus_ic: i64,
    /// `L_j(X) = L_j^c(X) = r_* L_j(Z)` for `j > 0`.
    pub higher: BTreeMap<u32, Rational>,
    pub sigma_tilde_total: i64,
}

impl Theorem3Report {
    /// The third difference equals the sum of the first two.
    pub fn identity_holds(&self) -> bool {
        self.smooth_minus_ic == self.smooth_minus_constant + self.constant_minus_ic
    }
}

pub fn contribution(sp: &SpectralPairSet) -> SingularityContribution {
    let table = sector_table(sp);
    let sigmas = sigma_table(&table);
    let n = sp.n as i64;
    let mut constant_minus_ic = 0;
    let mut smooth_minus_constant = 0;
    let mut smooth_minus_ic = 0;
    for (j, (s1, sne1)) in sigmas.entries() {
        let k1 = j - (n + 1);
        if k1 >= 0 {
            constant_minus_ic += if k1 % 2 == 0 { -s1 } else { s1 };
            if k1 % 2 == 0 {
                smooth_minus_constant += s1;
            }
        }
        let k2 = j - (n + 2);
        if k2 >= 0 && k2 % 2 == 0 {
            smooth_minus_ic += s1;
        }
        let k0 = j - n;
        if k0 >= 0 && k0 % 2 == 0 {
            smooth_minus_constant += sne1;
            smooth_minus_ic += sne1;
        }
    }
    SingularityContribution {
        milnor_number: sp.milnor_number(),
        sigmas,
        sigma_tilde: sigma_tilde(&table),
        constant_minus_ic,
        smooth_minus_constant,
        smooth_minus_ic,
    }
}

/// Evaluates the degree-zero correction formulas for a degree-`d` hypersurface
/// of dimension `n` with the given singularities.
///
/// Whether such a hypersurface exists is not checked.
pub fn theorem3_report(
    n: u32,
    d: u32,
    sings: &[SpectralPairSet],
) -> Result<Theorem3Report, SingularityError> {
    if let Some(s) = sings.iter().find(|s| s.n != n) {
        return Err(SingularityError::DimensionMismatch {
            expected: n,
            found: s.n,
        });
    }
    let pushforward = lclass_hypersurface_pushforward(n, d)?;
    let l0_smooth = pushforward[&0].clone();
    let singularities: Vec<SingularityContribution> = sings.iter().map(contribution).collect();
    let sum = |f: fn(&SingularityContribution) -> i64| singularities.iter().map(f).sum::<i64>();
    let constant_minus_ic = sum(|c| c.constant_minus_ic);
    let smooth_minus_constant = sum(|c| c.smooth_minus_constant);
    let smooth_minus_ic = sum(|c| c.smooth_minus_ic);
    let sigma_tilde_total = sum(|c| c.sigma_tilde);
    let l0_constant = &l0_smooth - rat(smooth_minus_constant);
    let l0_ic = &l0_smooth - rat(smooth_minus_ic);
    let higher = pushforward.into_iter().filter(|(j, _)| *j > 0).collect();
    Ok(Theorem3Report {
        n,
        d,
        singularities,
        l0_smooth,
        l0_constant,
        l0_ic,
        constant_minus_ic,
        smooth_minus_constant,
        smooth_minus_ic,
        higher,
        sigma_tilde_total,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactq::rational::ratio;

    fn bp(e: &[u32]) -> SpectralPairSet {
        bp_spectral_pairs(&BpSpec::new(e.to_vec()).unwrap())
    }

    fn pairs(set: &SpectralPairSet) -> Vec<(Rational, i64, u64)> {
        set.pairs().map(|p| (p.alpha, p.weight, p.mult)).collect()
    }

    /// Direct enumeration of exponent tuples.
    fn enumerate(exps: &[u32]) -> BTreeMap<Rational, u64> {
        let mut out = BTreeMap::new();
        let mut k = vec![1u32; exps.len()];
        loop {
            let alpha: Rational = k
                .iter()
                .zip(exps)
                .map(|(&ki, &a)| ratio(ki as i64, a as i64))
                .sum();
            *out.entry(alpha).or_insert(0) += 1;
            let mut i = 0;
            loop {
                if i == k.len() {
                    return out;
                }
                if k[i] + 1 < exps[i] {
                    k[i] += 1;
                    break;
                }
                k[i] = 1;
                i += 1;
            }
        }
    }

    #[test]
    fn invalid_specs() {
        assert_eq!(BpSpec::new(vec![2, 1]), Err(SingularityError::ExponentTooSmall(1)));
        assert_eq!(BpSpec::new(vec![]), Err(SingularityError::NoExponents));
    }

    #[test]
    fn spectrum_examples() {
        assert_eq!(pairs(&bp(&[2, 2, 2, 2])), vec![(rat(2), 4, 1)]);
        assert_eq!(pairs(&bp(&[2, 2, 2])), vec![(ratio(3, 2), 2, 1)]);
        assert_eq!(
            pairs(&bp(&[3, 3, 3])),
            vec![
                (rat(1), 3, 1),
                (ratio(4, 3), 2, 3),
                (ratio(5, 3), 2, 3),
                (rat(2), 3, 1)
            ]
        );
    }

    #[test]
    fn spectrum_matches_enumeration() {
        for exps in [vec![2, 3, 5], vec![4, 6], vec![3, 3, 3, 4], vec![7]] {
            let set = bp(&exps);
            let got: BTreeMap<Rational, u64> =
                set.pairs().map(|p| (p.alpha, p.mult)).collect();
            assert_eq!(got, enumerate(&exps), "{exps:?}");
        }
    }

    #[test]
    fn join_examples() {
        let a2 = SpectralPairSet::one_variable(2).unwrap();
        let two = ts_join(&a2, &a2).unwrap();
        assert_eq!(pairs(&two), vec![(rat(1), 2, 1)]);
        let three = ts_join(&two, &a2).unwrap();
        assert_eq!(three, bp(&[2, 2, 2]));
        assert_eq!(ts_join(&bp(&[2, 2]), &bp(&[2, 2])).unwrap(), bp(&[2, 2, 2, 2]));
        let explicit = SpectralPairSet::from_pairs(
            1,
            [SpectralPair { alpha: rat(1), weight: 2, mult: 1 }],
        )
        .unwrap();
        assert_eq!(ts_join(&explicit, &a2), Err(SingularityError::UnsupportedJoin));
    }

    #[test]
    fn pair_validation() {
        let bad = SpectralPairSet::from_pairs(1, [SpectralPair { alpha: rat(2), weight: 1, mult: 1 }]);
        assert!(matches!(bad, Err(SingularityError::AlphaOutOfRange { .. })));
        let bad = SpectralPairSet::from_pairs(1, [SpectralPair { alpha: rat(1), weight: 1, mult: 0 }]);
        assert_eq!(bad, Err(SingularityError::ZeroMultiplicity));
        let bad = SpectralPairSet::quasi_homogeneous(
            1,
            [SpectralPair { alpha: ratio(1, 2), weight: 2, mult: 1 }],
        );
        assert!(matches!(bad, Err(SingularityError::WeightRule { .. })));
    }

    #[test]
    fn sector_examples() {
        let t = sector_table(&bp(&[2, 2, 2, 2]));
        assert_eq!(t.unipotent, LevelTable::from([((2, 4), 1)]));
        assert!(t.nonunipotent.is_empty());
        let t = sector_table(&bp(&[2, 2, 2]));
        assert_eq!(t.nonunipotent, LevelTable::from([((1, 2), 1)]));
        let t = sector_table(&bp(&[3, 3, 3]));
        assert_eq!(t.unipotent, LevelTable::from([((1, 3), 1), ((2, 3), 1)]));
        assert_eq!(t.nonunipotent, LevelTable::from([((1, 2), 6)]));
        assert_eq!(t.primitive_unipotent, t.unipotent);
        assert_eq!(t.primitive_nonunipotent, t.nonunipotent);
        assert_eq!(t.total_dim(), 8);
        t.check_structure().unwrap();
    }

    #[test]
    fn sigma_examples() {
        let s = sigma_table(&sector_table(&bp(&[2, 2, 2, 2])));
        assert_eq!(s.sigma_1(4), 1);
        assert_eq!(s.entries().count(), 1);
        let s = sigma_table(&sector_table(&bp(&[2, 2, 2])));
        assert_eq!(s.sigma_ne1(2), -1);
        let s = sigma_table(&sector_table(&bp(&[3, 3, 3])));
        assert_eq!(s.sigma_1(3), 0);
    }

    #[test]
    fn link_and_sigma_tilde_examples() {
        let t = sector_table(&bp(&[2, 2, 2, 2]));
        assert_eq!(link_cohomology(&t), BTreeMap::from([(2, BTreeMap::from([(1, 1)]))]));
        assert_eq!(sigma_tilde(&t), -1);
        let t = sector_table(&bp(&[2, 2, 2]));
        assert!(link_cohomology(&t).is_empty());
        assert_eq!(sigma_tilde(&t), 0);
        // Cone over an elliptic curve: H^1 of the link is pure of weight 1.
        let t = sector_table(&bp(&[3, 3, 3]));
        assert_eq!(
            link_cohomology(&t),
            BTreeMap::from([(1, BTreeMap::from([(0, 1), (1, 1)]))])
        );
        assert_eq!(sigma_tilde(&t), 0);
        assert_eq!(sigma_tilde(&sector_table(&SpectralPairSet::empty(3))), 0);
    }

    /// A unipotent Jordan block of size 2 on a surface germ: classes at
    /// `(alpha, w) = (1, 4)` and `(2, 2)`.
    fn jordan_block() -> SpectralPairSet {
        SpectralPairSet::from_pairs(
            2,
            [
                SpectralPair { alpha: rat(1), weight: 4, mult: 1 },
                SpectralPair { alpha: rat(2), weight: 2, mult: 1 },
            ],
        )
        .unwrap()
    }

    #[test]
    fn primitive_differencing_with_nilpotent_part() {
        let t = sector_table(&jordan_block());
        assert_eq!(t.unipotent, LevelTable::from([((1, 2), 1), ((2, 4), 1)]));
        assert_eq!(t.primitive_unipotent, LevelTable::from([((2, 4), 1)]));
        t.check_structure().unwrap();
        let s = sigma_table(&t);
        assert_eq!(s.sigma_1(4), 1);
        assert_eq!(s.sigma_1(2), 0);
        // weight n-1-k = 0 at level 2-2 = 0, even weight, sign (-1)^{1+0}
        assert_eq!(link_cohomology(&t), BTreeMap::from([(0, BTreeMap::from([(0, 1)]))]));
        assert_eq!(sigma_tilde(&t), -1);
    }

    #[test]
    fn inconsistent_weights_rejected() {
        // A weight-4 class with no partner in weight 2.
        let set = SpectralPairSet::from_pairs(
            2,
            [SpectralPair { alpha: rat(1), weight: 4, mult: 1 }],
        )
        .unwrap();
        assert!(matches!(
            sector_table(&set).check_structure(),
            Err(SingularityError::InconsistentWeights(_))
        ));
        // A lone class below the center.
        let set = SpectralPairSet::from_pairs(
            2,
            [SpectralPair { alpha: rat(2), weight: 2, mult: 1 }],
        )
        .unwrap();
        assert!(sector_table(&set).check_structure().is_err());
    }

    #[test]
    fn theorem3_examples() {
        let r = theorem3_report(2, 4, &[bp(&[2, 2, 2])]).unwrap();
        assert_eq!(r.l0_smooth, rat(-16));
        assert_eq!(r.smooth_minus_ic, -1);
        assert_eq!(r.l0_ic, rat(-15));
        assert_eq!(r.constant_minus_ic, 0);
        assert_eq!(r.l0_constant, rat(-15));
        assert!(r.identity_holds());
        assert_eq!(r.higher[&2], rat(4));

        let r = theorem3_report(2, 4, &[]).unwrap();
        assert_eq!((r.l0_ic.clone(), r.l0_constant.clone()), (rat(-16), rat(-16)));

        let err = theorem3_report(2, 4, &[bp(&[2, 2, 2, 2])]);
        assert_eq!(err, Err(SingularityError::DimensionMismatch { expected: 2, found: 3 }));
    }

    #[test]
    fn three_fold_node_corrections() {
        let r = theorem3_report(3, 3, &[bp(&[2, 2, 2, 2])]).unwrap();
        assert_eq!(r.l0_smooth, rat(0));
        // sigma_1^4 = 1 with k = 0 in the first line
        assert_eq!(r.constant_minus_ic, -1);
        assert_eq!(r.sigma_tilde_total, -1);
        assert!(r.identity_holds());
    }

    #[test]
    fn file_round_trip() {
        let set = bp(&[3, 4]);
        let back = SpectralPairSet::from_json(&set.to_json()).unwrap();
        assert_eq!(back, set);
        let j = jordan_block();
        assert_eq!(SpectralPairSet::from_json(&j.to_json()).unwrap(), j);
        let text = r#"{"n": 2, "pairs": [{"alpha": "1", "weight": 4, "mult": 1}]}"#;
        assert!(SpectralPairSet::from_json(text).is_err());
        assert!(SpectralPairSet::from_json("[1, 2]").is_err());
    }
}
