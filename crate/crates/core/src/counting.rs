//! Closed-form counts of (self-dual) abelian codes and the product formula
//! over the divisors of the exponent of the `p'`-part.
//!
//! The product formula needs base counts for `GR(p^r, s')[P]`, `P` the Sylow
//! `p`-subgroup. They are known in closed form only in a few cases, so they
//! come from a [`BaseCountProvider`] that states its own domain.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::abelian_group::AbelianGroup;
use crate::arith::{as_prime_power, divisors, euler_phi, multiplicative_order};
use crate::cyclotomic::{chi, lambda, pair_class};
use crate::decompose::Duality;
use crate::error::{Error, Result};
use crate::galois_ring::GaloisRing;
use crate::group_ring::GroupRing;
use crate::ideals::{existence_conditions, IdealEngine};

fn big(v: u64) -> BigUint {
    BigUint::from(v)
}

fn big_pow(base: u64, e: u64) -> BigUint {
    num_traits::pow(big(base), usize::try_from(e).expect("exponent fits in usize"))
}

/// `(q^k - 1) / (q - 1) = 1 + q + ... + q^(k-1)`.
fn geometric(q: &BigUint, k: u64) -> BigUint {
    let one = BigUint::one();
    if *q == one {
        return big(k);
    }
    (num_traits::pow(q.clone(), k as usize) - &one) / (q - &one)
}

fn check_prime(p: u64) -> Result<()> {
    if crate::arith::is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

/// A self-dual code exists iff `r` is even, or `p = 2` and `|G|` is even.
/// The Hermitian question additionally needs `s` even.
pub fn exists_self_dual(p: u64, r: u32, s: u32, group: &AbelianGroup, duality: Duality) -> Result<bool> {
    check_prime(p)?;
    if duality == Duality::Hermitian && !s.is_multiple_of(2) {
        return Err(Error::OddDegree(s));
    }
    Ok(existence_conditions(p, r, group))
}

/// `GR(p^r, s)[G]` is a principal ideal ring iff the Sylow `p`-subgroup is
/// cyclic (`r = 1`), resp. `p` does not divide `|G|` (`r >= 2`).
pub fn is_principal_ideal_group_ring(p: u64, r: u32, group: &AbelianGroup) -> bool {
    if r == 1 {
        group.sylow_decompose(p).sylow().rank() <= 1
    } else {
        !group.order().is_multiple_of(p)
    }
}

/// Number of cyclic codes of length `p^a` over `GR(p^2, s)`; `a = 0` gives 3.
pub fn nc_p2(p: u64, s: u32, a: u32) -> Result<BigUint> {
    check_prime(p)?;
    if a == 0 {
        return Ok(big(3));
    }
    let q = big_pow(p, s as u64);
    let cap = p.pow(a - 1);
    // floor(d/2) = k occurs for d = 2k, 2k+1 while k < p^(a-1); every other
    // d in [0, p^a) is capped at p^(a-1)
    let mut sum = BigUint::zero();
    for k in 0..cap {
        sum += geometric(&q, k + 1);
    }
    let capped = p.pow(a) - 2 * cap;
    let top = geometric(&q, cap + 1);
    Ok(big(2) * (big(2) * sum + big(capped) * &top) + top)
}

/// Euclidean self-dual cyclic codes of length `p^a` over `GR(p^2, s)`;
/// `a = 0` gives 1.
pub fn nec_p2(p: u64, s: u32, a: u32) -> Result<BigUint> {
    check_prime(p)?;
    if a == 0 {
        return Ok(BigUint::one());
    }
    let q = big_pow(p, s as u64);
    if p == 2 {
        return Ok(match a {
            1 => BigUint::one(),
            2 => BigUint::one() + &q,
            _ => {
                let e = (1u64 << (a - 2)) - 1;
                BigUint::one() + &q + big_pow(2, 2 * s as u64 + 1) * geometric(&q, e)
            }
        });
    }
    Ok(big(2) * geometric(&q, p.pow(a - 1).div_ceil(2)))
}

/// Hermitian self-dual cyclic codes of length `p^a` over `GR(p^2, s)`, `s`
/// even; `a = 0` gives 1.
pub fn nhc_p2(p: u64, s: u32, a: u32) -> Result<BigUint> {
    check_prime(p)?;
    if !s.is_multiple_of(2) {
        return Err(Error::OddDegree(s));
    }
    if a == 0 {
        return Ok(BigUint::one());
    }
    Ok(geometric(&big_pow(p, s as u64 / 2), p.pow(a - 1) + 1))
}

fn check_semisimple(p: u64, group: &AbelianGroup) -> Result<()> {
    check_prime(p)?;
    if group.order().is_multiple_of(p) {
        return Err(Error::NotCoprime {
            p,
            order: group.order(),
        });
    }
    Ok(())
}

/// `sum_{d | M} indicator(d) N_A(d) / (2 ord_d(q))`, each term exact.
fn paired_class_count(group: &AbelianGroup, q: u64, indicator: impl Fn(u64) -> Result<u32>) -> Result<u64> {
    let mut total = 0;
    for d in divisors(group.exponent()) {
        if indicator(d)? == 1 {
            let ord = multiplicative_order(q % d.max(2), d);
            total += exact_div(group.count_order_formula(d), 2 * ord)?;
        }
    }
    Ok(total)
}

fn exact_div(n: u64, d: u64) -> Result<u64> {
    if !n.is_multiple_of(d) {
        return Err(Error::Internal(format!("{n} is not divisible by {d}")));
    }
    Ok(n / d)
}

/// Euclidean self-dual codes in `GR(p^r, s)[A]`, `p` not dividing `|A|`:
/// `(1 + r)^(number of type-III pairs)` for even `r`, else 0.
pub fn nea_semisimple(p: u64, r: u32, s: u32, group: &AbelianGroup) -> Result<BigUint> {
    check_semisimple(p, group)?;
    if !r.is_multiple_of(2) {
        return Ok(BigUint::zero());
    }
    let q = p.pow(s);
    let pairs = paired_class_count(group, q, |d| chi(d, q))?;
    Ok(big_pow(1 + r as u64, pairs))
}

/// Hermitian analogue of [`nea_semisimple`], with `lambda(d, p^(s/2))`.
pub fn nha_semisimple(p: u64, r: u32, s: u32, group: &AbelianGroup) -> Result<BigUint> {
    check_semisimple(p, group)?;
    if !s.is_multiple_of(2) {
        return Err(Error::OddDegree(s));
    }
    if !r.is_multiple_of(2) {
        return Ok(BigUint::zero());
    }
    let half = p.pow(s / 2);
    let pairs = paired_class_count(group, p.pow(s), |d| lambda(d, half))?;
    Ok(big_pow(1 + r as u64, pairs))
}

/// The three base quantities of the product formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum BaseQuantity {
    /// All abelian codes.
    #[serde(rename = "NA")]
    All,
    /// Euclidean self-dual codes.
    #[serde(rename = "NEA")]
    Euclidean,
    /// Hermitian self-dual codes.
    #[serde(rename = "NHA")]
    Hermitian,
}

impl fmt::Display for BaseQuantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::All => "NA",
            Self::Euclidean => "NEA",
            Self::Hermitian => "NHA",
        })
    }
}

/// A base count request: `quantity(GR(p^r, s)[group])`, `group` a `p`-group.
#[derive(Clone, Debug)]
pub struct BaseQuery<'a> {
    pub quantity: BaseQuantity,
    pub p: u64,
    pub r: u32,
    pub s: u32,
    pub group: &'a AbelianGroup,
}

impl BaseQuery<'_> {
    pub fn ring_label(&self) -> String {
        format!("GR({}^{},{})[{}]", self.p, self.r, self.s, self.group)
    }

    fn label(&self) -> String {
        format!("{}({})", self.quantity, self.ring_label())
    }

    fn outside(&self, provider: &str, reason: impl Into<String>) -> Error {
        Error::ProviderDomain {
            provider: provider.to_string(),
            quantity: self.quantity.to_string(),
            ring: self.ring_label(),
            reason: reason.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseCount {
    pub value: BigUint,
    pub provider: &'static str,
}

/// Source of base counts; rejects queries outside its domain.
pub trait BaseCountProvider: Send + Sync {
    fn name(&self) -> &'static str;
    fn count(&self, query: &BaseQuery<'_>) -> Result<BaseCount>;
}

/// Trivial `P`: the ring is the chain ring `GR(p^r, s)` with ideals `p^i GR`.
#[derive(Clone, Copy, Debug, Default)]
pub struct TrivialProvider;

impl BaseCountProvider for TrivialProvider {
    fn name(&self) -> &'static str {
        "trivial"
    }

    fn count(&self, query: &BaseQuery<'_>) -> Result<BaseCount> {
        if !query.group.is_trivial() {
            return Err(query.outside(self.name(), "P is not trivial"));
        }
        let value = match query.quantity {
            BaseQuantity::All => big(query.r as u64 + 1),
            _ => big(u64::from(query.r.is_multiple_of(2))),
        };
        Ok(BaseCount {
            value,
            provider: self.name(),
        })
    }
}

/// `r = 2` and `P` cyclic of order `p^a`: the cyclic-code closed forms.
#[derive(Clone, Copy, Debug, Default)]
pub struct ClosedFormProvider;

impl BaseCountProvider for ClosedFormProvider {
    fn name(&self) -> &'static str {
        "closed"
    }

    fn count(&self, query: &BaseQuery<'_>) -> Result<BaseCount> {
        if query.r != 2 {
            return Err(query.outside(self.name(), "closed forms need r = 2"));
        }
        if query.group.rank() > 1 {
            return Err(query.outside(self.name(), "P is not cyclic"));
        }
        let a = match as_prime_power(query.group.order()) {
            _ if query.group.is_trivial() => 0,
            Some((prime, a)) if prime == query.p => a,
            _ => return Err(query.outside(self.name(), "P is not a p-group")),
        };
        let value = match query.quantity {
            BaseQuantity::All => nc_p2(query.p, query.s, a)?,
            BaseQuantity::Euclidean => nec_p2(query.p, query.s, a)?,
            BaseQuantity::Hermitian => nhc_p2(query.p, query.s, a)?,
        };
        Ok(BaseCount {
            value,
            provider: self.name(),
        })
    }
}

/// Exhaustive ideal enumeration of `GR(p^r, s)[P]` within a size bound.
#[derive(Debug)]
pub struct BruteForceProvider {
    bound: u64,
    cache: Mutex<HashMap<(BaseQuantity, u64, u32, u32, Vec<u64>), BigUint>>,
}

impl BruteForceProvider {
    pub fn new(bound: u64) -> Self {
        Self {
            bound,
            cache: Mutex::new(HashMap::new()),
        }
    }
}

impl BaseCountProvider for BruteForceProvider {
    fn name(&self) -> &'static str {
        "brute"
    }

    fn count(&self, query: &BaseQuery<'_>) -> Result<BaseCount> {
        let log = (query.r as u64)
            .checked_mul(query.s as u64)
            .and_then(|v| v.checked_mul(query.group.order()));
        let fits = log
            .and_then(|l| u32::try_from(l).ok())
            .and_then(|l| query.p.checked_pow(l))
            .is_some_and(|size| size <= self.bound);
        if !fits {
            return Err(query.outside(
                self.name(),
                format!("ring exceeds the exhaustive bound {}", self.bound),
            ));
        }
        let key = (
            query.quantity,
            query.p,
            query.r,
            query.s,
            query.group.factors().to_vec(),
        );
        if let Some(v) = self.cache.lock().expect("cache lock").get(&key) {
            return Ok(BaseCount {
                value: v.clone(),
                provider: self.name(),
            });
        }
        let ring = GroupRing::shared(
            GaloisRing::shared(query.p, query.r, query.s)?,
            query.group.clone(),
        );
        let engine = IdealEngine::with_bound(ring, self.bound)?;
        let value = match query.quantity {
            BaseQuantity::All => big(engine.enumerate_ideals()?.len() as u64),
            BaseQuantity::Euclidean => big(engine.self_dual_ideals(Duality::Euclidean)?.len() as u64),
            BaseQuantity::Hermitian => big(engine.self_dual_ideals(Duality::Hermitian)?.len() as u64),
        };
        self.cache.lock().expect("cache lock").insert(key, value.clone());
        Ok(BaseCount {
            value,
            provider: self.name(),
        })
    }
}

/// Trivial, then closed form, then brute force: the first whose domain
/// contains the query.
#[derive(Debug)]
pub struct AutoProvider {
    brute: BruteForceProvider,
}

impl AutoProvider {
    pub fn new(bound: u64) -> Self {
        Self {
            brute: BruteForceProvider::new(bound),
        }
    }
}

impl BaseCountProvider for AutoProvider {
    fn name(&self) -> &'static str {
        "auto"
    }

    fn count(&self, query: &BaseQuery<'_>) -> Result<BaseCount> {
        TrivialProvider
            .count(query)
            .or_else(|_| ClosedFormProvider.count(query))
            .or_else(|_| self.brute.count(query))
            .map_err(|_| {
                query.outside(
                    self.name(),
                    format!(
                        "no provider applies (not trivial, not r = 2 with cyclic P, larger than {})",
                        self.brute.bound
                    ),
                )
            })
    }
}

/// Provider selection by name, as on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ProviderChoice {
    Auto,
    Trivial,
    Closed,
    Brute,
}

impl ProviderChoice {
    pub fn build(self, bound: u64) -> Arc<dyn BaseCountProvider> {
        match self {
            Self::Auto => Arc::new(AutoProvider::new(bound)),
            Self::Trivial => Arc::new(TrivialProvider),
            Self::Closed => Arc::new(ClosedFormProvider),
            Self::Brute => Arc::new(BruteForceProvider::new(bound)),
        }
    }
}

impl std::str::FromStr for ProviderChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(Self::Auto),
            "trivial" => Ok(Self::Trivial),
            "closed" => Ok(Self::Closed),
            "brute" => Ok(Self::Brute),
            other => Err(Error::Parse(format!("unknown provider `{other}`"))),
        }
    }
}

fn serialize_decimal<S: Serializer>(v: &BigUint, ser: S) -> std::result::Result<S::Ok, S::Error> {
    ser.serialize_str(&v.to_str_radix(10))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountParameters {
    pub p: u64,
    pub r: u32,
    pub s: u32,
    pub group: String,
    /// The `p'`-part `A`.
    pub complement: String,
    /// The Sylow `p`-subgroup `P`.
    pub sylow: String,
    /// `euclidean`, `hermitian` or `none` (all codes).
    pub duality: String,
}

/// One factor of the product formula: the classes of elements of order `d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BreakdownRow {
    pub d: u64,
    /// Number of elements of order `d` in `A`.
    pub elements: u64,
    /// `ord_d(p^s)`, the class size.
    pub ord: u64,
    /// Good/bad classification of `(d, p^s)` (Euclidean) or `(d, p^(s/2))`
    /// (Hermitian); empty when counting all codes.
    pub pair_class: String,
    /// Class type: `I`, `II`, `III`, `II'`, `III'`, or `-` for all codes.
    pub class_type: String,
    /// Base count used, e.g. `NHA(GR(2^2,2)[Z2])`.
    pub base: String,
    #[serde(serialize_with = "serialize_decimal")]
    pub base_value: BigUint,
    pub exponent: u64,
    #[serde(serialize_with = "serialize_decimal")]
    pub factor: BigUint,
    pub provider: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountReport {
    pub parameters: CountParameters,
    #[serde(serialize_with = "serialize_decimal")]
    pub count: BigUint,
    pub breakdown: Vec<BreakdownRow>,
}

impl CountReport {
    /// Product of the breakdown factors.
    pub fn product_of_factors(&self) -> BigUint {
        self.breakdown.iter().map(|row| &row.factor).product()
    }
}

fn duality_label(duality: Option<Duality>) -> String {
    duality.map_or_else(|| "none".to_string(), |d| d.to_string())
}

/// Counts codes in `GR(p^r, s)[A (+) P]`: all of them (`duality = None`), or
/// the Euclidean / Hermitian self-dual ones, by the product formula over the
/// divisors `d` of the exponent of `A`.
pub fn general_count(
    p: u64,
    r: u32,
    s: u32,
    a: &AbelianGroup,
    pgroup: &AbelianGroup,
    duality: Option<Duality>,
    provider: &dyn BaseCountProvider,
) -> Result<CountReport> {
    check_semisimple(p, a)?;
    if !pgroup.is_trivial() && as_prime_power(pgroup.order()).map(|(q, _)| q) != Some(p) {
        return Err(Error::InvalidParameter(format!("{pgroup} is not a {p}-group")));
    }
    if duality == Some(Duality::Hermitian) && !s.is_multiple_of(2) {
        return Err(Error::OddDegree(s));
    }
    let q = p.checked_pow(s).ok_or_else(|| Error::InvalidParameter(format!("{p}^{s} overflows")))?;
    let half = p.pow(s / 2);
    let mut breakdown = Vec::new();
    for d in divisors(a.exponent()) {
        let elements = a.count_order_formula(d);
        let ord = if d == 1 { 1 } else { multiplicative_order(q % d, d) };
        let s_ext = u32::try_from(s as u64 * ord)
            .map_err(|_| Error::InvalidParameter(format!("degree {s} * {ord} overflows")))?;
        let classes = exact_div(elements, ord)?;
        let (quantity, exponent, pc, class_type, ext) = match duality {
            None => (BaseQuantity::All, classes, String::new(), "-", s_ext),
            Some(Duality::Euclidean) => {
                let pc = pair_class(d, q)?;
                if chi(d, q)? == 1 {
                    (BaseQuantity::All, exact_div(elements, 2 * ord)?, pc.to_string(), "III", s_ext)
                } else if ord == 1 {
                    (BaseQuantity::Euclidean, elements, pc.to_string(), "I", s)
                } else {
                    (BaseQuantity::Hermitian, classes, pc.to_string(), "II", s_ext)
                }
            }
            Some(Duality::Hermitian) => {
                let pc = pair_class(d, half)?;
                if lambda(d, half)? == 1 {
                    (BaseQuantity::All, exact_div(elements, 2 * ord)?, pc.to_string(), "III'", s_ext)
                } else {
                    (BaseQuantity::Hermitian, classes, pc.to_string(), "II'", s_ext)
                }
            }
        };
        let query = BaseQuery {
            quantity,
            p,
            r,
            s: ext,
            group: pgroup,
        };
        let base = provider.count(&query)?;
        let factor = num_traits::pow(base.value.clone(), exponent as usize);
        breakdown.push(BreakdownRow {
            d,
            elements,
            ord,
            pair_class: pc,
            class_type: class_type.to_string(),
            base: query.label(),
            base_value: base.value,
            exponent,
            factor,
            provider: base.provider.to_string(),
        });
    }
    let count = breakdown.iter().map(|row| &row.factor).product();
    let group = match (a.is_trivial(), pgroup.is_trivial()) {
        (_, true) => a.to_string(),
        (true, false) => pgroup.to_string(),
        _ => format!("{a}x{pgroup}"),
    };
    Ok(CountReport {
        parameters: CountParameters {
            p,
            r,
            s,
            group,
            complement: a.to_string(),
            sylow: pgroup.to_string(),
            duality: duality_label(duality),
        },
        count,
        breakdown,
    })
}

pub fn nea_general(
    p: u64,
    r: u32,
    s: u32,
    a: &AbelianGroup,
    pgroup: &AbelianGroup,
    provider: &dyn BaseCountProvider,
) -> Result<CountReport> {
    general_count(p, r, s, a, pgroup, Some(Duality::Euclidean), provider)
}

pub fn nha_general(
    p: u64,
    r: u32,
    s: u32,
    a: &AbelianGroup,
    pgroup: &AbelianGroup,
    provider: &dyn BaseCountProvider,
) -> Result<CountReport> {
    general_count(p, r, s, a, pgroup, Some(Duality::Hermitian), provider)
}

pub fn na_general(
    p: u64,
    r: u32,
    s: u32,
    a: &AbelianGroup,
    pgroup: &AbelianGroup,
    provider: &dyn BaseCountProvider,
) -> Result<CountReport> {
    general_count(p, r, s, a, pgroup, None, provider)
}

/// [`general_count`] for an arbitrary `G`, split as `A (+) P`.
pub fn count_codes(
    p: u64,
    r: u32,
    s: u32,
    group: &AbelianGroup,
    duality: Option<Duality>,
    provider: &dyn BaseCountProvider,
) -> Result<CountReport> {
    check_prime(p)?;
    let split = group.sylow_decompose(p);
    let mut report = general_count(p, r, s, split.complement(), split.sylow(), duality, provider)?;
    report.parameters.group = group.to_string();
    Ok(report)
}

/// `n = m p^a` with `p` not dividing `m`.
pub fn split_length(p: u64, n: u64) -> Result<(u64, u32)> {
    check_prime(p)?;
    if n == 0 {
        return Err(Error::InvalidParameter("length must be positive".into()));
    }
    let (mut m, mut a) = (n, 0);
    while m % p == 0 {
        m /= p;
        a += 1;
    }
    Ok((m, a))
}

/// Cyclic codes of length `n` over `GR(p^2, s)` from the closed forms:
/// all codes (`None`), Euclidean self-dual (with the `eta(m)` factor for the
/// type-I classes) or Hermitian self-dual.
pub fn cyclic_count_length_n(p: u64, s: u32, n: u64, duality: Option<Duality>) -> Result<CountReport> {
    let (m, a) = split_length(p, n)?;
    if duality == Some(Duality::Hermitian) && !s.is_multiple_of(2) {
        return Err(Error::OddDegree(s));
    }
    let q = p.pow(s);
    let half = p.pow(s / 2);
    let label = |name: &str, ext: u64| format!("{name}(GR({p}^2,{ext}),{})", p.pow(a));
    let mut breakdown = Vec::new();
    let mut eta_row: Option<BreakdownRow> = None;
    for d in divisors(m) {
        let phi = euler_phi(d);
        let ord = if d == 1 { 1 } else { multiplicative_order(q % d, d) };
        let ext = u32::try_from(s as u64 * ord).map_err(|_| Error::InvalidParameter("degree overflows".into()))?;
        let row = |name: &str, base: BigUint, exponent: u64, pc: String, ty: &str| BreakdownRow {
            d,
            elements: phi,
            ord,
            pair_class: pc,
            class_type: ty.to_string(),
            base: label(name, ext as u64),
            factor: num_traits::pow(base.clone(), exponent as usize),
            base_value: base,
            exponent,
            provider: "closed".to_string(),
        };
        match duality {
            None => breakdown.push(row("NC", nc_p2(p, ext, a)?, phi / ord, String::new(), "-")),
            Some(Duality::Euclidean) => {
                let pc = pair_class(d, q)?.to_string();
                if chi(d, q)? == 1 {
                    breakdown.push(row("NC", nc_p2(p, ext, a)?, exact_div(phi, 2 * ord)?, pc, "III"));
                } else if d <= 2 {
                    // eta(m): one type-I class for odd m, two for even m
                    let eta = if m % 2 == 0 { 2 } else { 1 };
                    if eta_row.is_none() {
                        let r = row("NEC", nec_p2(p, s, a)?, eta, pc, "I");
                        eta_row = Some(r.clone());
                        breakdown.push(r);
                    }
                } else {
                    breakdown.push(row("NHC", nhc_p2(p, ext, a)?, exact_div(phi, ord)?, pc, "II"));
                }
            }
            Some(Duality::Hermitian) => {
                let pc = pair_class(d, half)?.to_string();
                if lambda(d, half)? == 1 {
                    breakdown.push(row("NC", nc_p2(p, ext, a)?, exact_div(phi, 2 * ord)?, pc, "III'"));
                } else {
                    breakdown.push(row("NHC", nhc_p2(p, ext, a)?, exact_div(phi, ord)?, pc, "II'"));
                }
            }
        }
    }
    let count = breakdown.iter().map(|row| &row.factor).product();
    Ok(CountReport {
        parameters: CountParameters {
            p,
            r: 2,
            s,
            group: AbelianGroup::cyclic(n)?.to_string(),
            complement: AbelianGroup::cyclic(m)?.to_string(),
            sylow: AbelianGroup::cyclic(p.pow(a))?.to_string(),
            duality: duality_label(duality),
        },
        count,
        breakdown,
    })
}

pub fn nc_length_n(p: u64, s: u32, n: u64) -> Result<CountReport> {
    cyclic_count_length_n(p, s, n, None)
}

pub fn nec_length_n(p: u64, s: u32, n: u64) -> Result<CountReport> {
    cyclic_count_length_n(p, s, n, Some(Duality::Euclidean))
}

pub fn nhc_length_n(p: u64, s: u32, n: u64) -> Result<CountReport> {
    cyclic_count_length_n(p, s, n, Some(Duality::Hermitian))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(spec: &str) -> AbelianGroup {
        AbelianGroup::parse(spec).unwrap()
    }

    fn n(v: u64) -> BigUint {
        big(v)
    }

    /// The cyclic-code count summed term by term.
    fn nc_p2_literal(p: u64, s: u32, a: u32) -> BigUint {
        let q = big_pow(p, s as u64);
        let cap = p.pow(a - 1);
        let mut sum = BigUint::zero();
        for d in 0..p.pow(a) {
            sum += geometric(&q, (d / 2).min(cap) + 1);
        }
        big(2) * sum + geometric(&q, cap + 1)
    }

    #[test]
    fn existence_examples() {
        assert!(exists_self_dual(3, 2, 1, &g("Z5"), Duality::Euclidean).unwrap());
        assert!(exists_self_dual(2, 3, 1, &g("Z6"), Duality::Euclidean).unwrap());
        assert!(!exists_self_dual(3, 1, 1, &g("Z3"), Duality::Euclidean).unwrap());
        assert!(exists_self_dual(2, 1, 1, &g("Z2"), Duality::Hermitian).is_err());
        assert!(exists_self_dual(4, 2, 1, &g("Z2"), Duality::Euclidean).is_err());
    }

    #[test]
    fn principal_ideal_group_rings() {
        assert!(is_principal_ideal_group_ring(2, 1, &g("Z4xZ3")));
        assert!(!is_principal_ideal_group_ring(2, 1, &g("Z2xZ2")));
        assert!(!is_principal_ideal_group_ring(2, 2, &g("Z2")));
        assert!(is_principal_ideal_group_ring(2, 2, &g("Z3")));
    }

    #[test]
    fn cyclic_closed_forms() {
        assert_eq!(nc_p2(2, 1, 1).unwrap(), n(7));
        assert_eq!(nc_p2(2, 1, 2).unwrap(), n(23));
        assert_eq!(nc_p2(3, 1, 1).unwrap(), n(16));
        assert_eq!(nc_p2(2, 2, 1).unwrap(), n(9));
        assert_eq!(nc_p2(2, 1, 0).unwrap(), n(3));
        for (p, s, a) in [(2, 1, 3), (3, 2, 2), (5, 1, 2), (2, 3, 4), (7, 1, 1)] {
            assert_eq!(nc_p2(p, s, a).unwrap(), nc_p2_literal(p, s, a));
        }
        assert_eq!(nec_p2(2, 1, 1).unwrap(), n(1));
        assert_eq!(nec_p2(2, 1, 2).unwrap(), n(3));
        assert_eq!(nec_p2(2, 1, 3).unwrap(), n(11));
        assert_eq!(nec_p2(3, 1, 1).unwrap(), n(2));
        assert_eq!(nec_p2(3, 1, 0).unwrap(), n(1));
        assert_eq!(nhc_p2(2, 2, 1).unwrap(), n(3));
        assert_eq!(nhc_p2(2, 2, 2).unwrap(), n(7));
        assert_eq!(nhc_p2(3, 2, 1).unwrap(), n(4));
        assert_eq!(nhc_p2(3, 2, 2).unwrap(), n(40));
        assert!(nhc_p2(2, 1, 1).is_err());
    }

    #[test]
    fn semisimple_examples() {
        assert_eq!(nea_semisimple(2, 2, 1, &g("Z7")).unwrap(), n(3));
        assert_eq!(nea_semisimple(3, 2, 1, &g("Z2")).unwrap(), n(1));
        assert_eq!(nea_semisimple(3, 1, 1, &g("Z2")).unwrap(), n(0));
        assert_eq!(nha_semisimple(2, 2, 2, &g("Z5")).unwrap(), n(3));
        assert!(nea_semisimple(2, 2, 1, &g("Z2")).is_err());
        assert!(nha_semisimple(2, 2, 1, &g("Z3")).is_err());
    }

    #[test]
    fn general_examples() {
        let closed = ClosedFormProvider;
        let report = nea_general(2, 2, 1, &g("Z3"), &g("Z2"), &closed).unwrap();
        assert_eq!(report.count, n(3));
        assert_eq!(report.breakdown.len(), 2);
        assert_eq!(report.breakdown[0].base, "NEA(GR(2^2,1)[Z2])");
        assert_eq!(report.breakdown[0].factor, n(1));
        assert_eq!(report.breakdown[1].base, "NHA(GR(2^2,2)[Z2])");
        assert_eq!(report.breakdown[1].factor, n(3));
        assert_eq!(report.product_of_factors(), report.count);

        let report = nea_general(3, 2, 1, &AbelianGroup::trivial(), &g("Z3"), &closed).unwrap();
        assert_eq!(report.count, n(2));

        let err = nea_general(2, 3, 1, &g("Z3"), &g("Z2"), &closed).unwrap_err();
        assert!(matches!(err, Error::ProviderDomain { .. }));
        assert!(err.to_string().contains("NEA"));
    }

    #[test]
    fn general_with_trivial_sylow_is_semisimple() {
        let trivial = TrivialProvider;
        let one = AbelianGroup::trivial();
        for order in 1..=50u64 {
            for a in crate::abelian_group::all_abelian_groups(order) {
                for (p, r, s) in [(2, 2, 1), (3, 2, 1), (2, 3, 2), (5, 2, 2), (2, 4, 2), (7, 1, 1)] {
                    if order % p == 0 {
                        continue;
                    }
                    let e = nea_general(p, r, s, &a, &one, &trivial).unwrap();
                    assert_eq!(e.count, nea_semisimple(p, r, s, &a).unwrap(), "{p} {r} {s} {a}");
                    assert_eq!(e.product_of_factors(), e.count);
                    if s % 2 == 0 {
                        let h = nha_general(p, r, s, &a, &one, &trivial).unwrap();
                        assert_eq!(h.count, nha_semisimple(p, r, s, &a).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn length_n_examples() {
        assert_eq!(nec_length_n(2, 1, 6).unwrap().count, n(3));
        assert_eq!(nec_length_n(2, 1, 2).unwrap().count, n(1));
        assert_eq!(nec_length_n(3, 1, 3).unwrap().count, n(2));
        assert_eq!(nc_length_n(2, 1, 4).unwrap().count, n(23));
        assert_eq!(nhc_length_n(2, 2, 2).unwrap().count, n(3));
    }

    #[test]
    fn length_n_is_a_specialisation() {
        let closed = ClosedFormProvider;
        for (p, s) in [(2, 1), (2, 2), (3, 1), (3, 2), (5, 2)] {
            for len in 1..=60u64 {
                let (m, a) = split_length(p, len).unwrap();
                let am = AbelianGroup::cyclic(m).unwrap();
                let pa = AbelianGroup::cyclic(p.pow(a)).unwrap();
                let mut dualities = vec![None, Some(Duality::Euclidean)];
                if s % 2 == 0 {
                    dualities.push(Some(Duality::Hermitian));
                }
                for duality in dualities {
                    let lhs = cyclic_count_length_n(p, s, len, duality).unwrap();
                    let rhs = general_count(p, 2, s, &am, &pa, duality, &closed).unwrap();
                    assert_eq!(lhs.count, rhs.count, "{p} {s} {len} {duality:?}");
                    assert_eq!(lhs.product_of_factors(), lhs.count);
                }
            }
        }
    }

    #[test]
    fn counts_positive_iff_existence() {
        let auto = AutoProvider::new(1 << 12);
        for (p, r, s) in [(2, 2, 1), (2, 1, 1), (3, 1, 1), (3, 2, 2), (2, 3, 2), (5, 2, 1)] {
            for order in 1..=30u64 {
                for grp in crate::abelian_group::all_abelian_groups(order) {
                    let Ok(report) = count_codes(p, r, s, &grp, Some(Duality::Euclidean), &auto) else {
                        continue;
                    };
                    let exists = exists_self_dual(p, r, s, &grp, Duality::Euclidean).unwrap();
                    assert_eq!(report.count > BigUint::zero(), exists, "{p} {r} {s} {grp}");
                }
            }
        }
    }

    #[test]
    fn providers_respect_domains() {
        let z2 = g("Z2");
        let q = BaseQuery {
            quantity: BaseQuantity::All,
            p: 2,
            r: 2,
            s: 1,
            group: &z2,
        };
        assert!(TrivialProvider.count(&q).is_err());
        assert_eq!(ClosedFormProvider.count(&q).unwrap().value, n(7));
        assert_eq!(BruteForceProvider::new(1 << 16).count(&q).unwrap().value, n(7));
        assert!(BruteForceProvider::new(8).count(&q).is_err());
        let auto = AutoProvider::new(1 << 16);
        assert_eq!(auto.count(&q).unwrap().provider, "closed");
        let z2z2 = g("Z2xZ2");
        let q2 = BaseQuery { group: &z2z2, ..q.clone() };
        assert!(ClosedFormProvider.count(&q2).is_err());
        assert_eq!(auto.count(&q2).unwrap().provider, "brute");
    }
}
