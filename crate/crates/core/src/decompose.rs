//! Discrete Fourier transform on `GR(p^r, s)[A]` with `p` not dividing `|A|`,
//! and the resulting splitting of `GR[A]` into a product of Galois rings, one
//! factor per cyclotomic class.
//!
//! The component of a class with point `a` is `c^_a`, pulled back from the
//! transform ring `GR(p^r, s mu)` into `GR(p^r, s nu)`, `nu` the class size.
//! Paired classes (types III / III') use the points `a` and `-a`
//! (resp. `-p^(s/2) a`).

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::arith::{inverse_mod, multiplicative_order};
use crate::cyclotomic::{ClassPartition, Slot, SlotKind};
use crate::error::{Error, Result};
use crate::galois_ring::{Embedding, GaloisRing, GrElement};
use crate::group_ring::{GroupRing, GroupRingElement, SplitElement, SplitGroupRing};

/// Which form (and hence which class layout) a decomposition is built for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Duality {
    Euclidean,
    Hermitian,
}

impl fmt::Display for Duality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Euclidean => "euclidean",
            Self::Hermitian => "hermitian",
        })
    }
}

/// `c -> (c^_h)_h` with `c^_h = sum_a c_a zeta^(gamma_h(a))`.
#[derive(Debug)]
pub struct Dft {
    base: Arc<GroupRing>,
    mu: u32,
    big: Arc<GaloisRing>,
    embed: Embedding,
    /// `zeta^k` for `k < M`.
    zeta_powers: Vec<GrElement>,
    /// `gamma_h(a)` at `h * n + a`.
    gamma: Vec<u32>,
    inv_order: u64,
}

impl Dft {
    pub fn new(base: Arc<GroupRing>) -> Result<Self> {
        let ring = base.ring().clone();
        let group = base.group();
        let (p, s) = (ring.p(), ring.s());
        if group.order().is_multiple_of(p) {
            return Err(Error::NotCoprime { p, order: group.order() });
        }
        let m = group.exponent();
        let q = ring.residue_field_size();
        let mu = if m == 1 { 1 } else { multiplicative_order(q % m, m) as u32 };
        let big = if mu == 1 {
            ring.clone()
        } else {
            GaloisRing::shared(p, ring.r(), s * mu)?
        };
        let embed = Embedding::new(ring.clone(), big.clone())?;
        let zeta = big.root_of_unity(m)?;
        let mut zeta_powers = Vec::with_capacity(m as usize);
        let mut z = big.one();
        for _ in 0..m {
            zeta_powers.push(z.clone());
            z = big.mul(&z, &zeta);
        }
        let n = base.len();
        let elems: Vec<_> = group.elements().collect();
        let mut gamma = Vec::with_capacity(n * n);
        for h in &elems {
            for a in &elems {
                gamma.push(group.gamma(h, a) as u32);
            }
        }
        let inv_order = inverse_mod(group.order() % ring.characteristic(), ring.characteristic())
            .expect("|A| is a unit");
        Ok(Self {
            base,
            mu,
            big,
            embed,
            zeta_powers,
            gamma,
            inv_order,
        })
    }

    pub fn base(&self) -> &Arc<GroupRing> {
        &self.base
    }

    /// `mu = ord_M(p^s)`.
    pub fn mu(&self) -> u32 {
        self.mu
    }

    /// The transform ring `GR(p^r, s mu)`.
    pub fn transform_ring(&self) -> &Arc<GaloisRing> {
        &self.big
    }

    pub fn embedding(&self) -> &Embedding {
        &self.embed
    }

    pub fn zeta(&self) -> &GrElement {
        &self.zeta_powers[1 % self.zeta_powers.len()]
    }

    pub fn gamma(&self, h: usize, a: usize) -> u32 {
        self.gamma[h * self.base.len() + a]
    }

    /// The spectrum, indexed by group index.
    pub fn forward(&self, c: &GroupRingElement) -> Vec<GrElement> {
        let n = self.base.len();
        let lifted: Vec<Option<GrElement>> = (0..n)
            .map(|a| {
                let ca = self.base.coefficient(c, a);
                (!ca.is_zero()).then(|| self.embed.apply(&ca))
            })
            .collect();
        (0..n)
            .map(|h| {
                lifted.iter().enumerate().fold(self.big.zero(), |acc, (a, ca)| match ca {
                    Some(ca) => {
                        let z = &self.zeta_powers[self.gamma(h, a) as usize];
                        self.big.add(&acc, &self.big.mul(ca, z))
                    }
                    None => acc,
                })
            })
            .collect()
    }

    /// `c_a = |A|^(-1) sum_h c^_h zeta^(-gamma_h(a))`, pulled back to the base ring.
    pub fn inverse(&self, spectrum: &[GrElement]) -> Result<GroupRingElement> {
        let n = self.base.len();
        if spectrum.len() != n {
            return Err(Error::InvalidParameter(format!(
                "spectrum of length {} for a group of order {n}",
                spectrum.len()
            )));
        }
        let m = self.zeta_powers.len();
        let mut coeffs = Vec::with_capacity(n);
        for a in 0..n {
            let mut acc = self.big.zero();
            for (h, value) in spectrum.iter().enumerate() {
                if value.is_zero() {
                    continue;
                }
                let k = (m - self.gamma(h, a) as usize) % m;
                acc = self.big.add(&acc, &self.big.mul(value, &self.zeta_powers[k]));
            }
            let acc = self.big.scale_int(&acc, self.inv_order);
            coeffs.push(self.embed.pull_back(&acc)?);
        }
        self.base.from_coefficients(&coeffs)
    }
}

/// Components of an element of `GR[A]`, one entry per slot of the layout
/// (two for paired slots).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DecomposedElement {
    pub duality: Duality,
    pub parts: Vec<Vec<GrElement>>,
}

#[derive(Debug)]
struct Layout {
    slots: Vec<Slot>,
    /// Evaluation points (group indices) for each slot: one or two.
    points: Vec<Vec<usize>>,
}

/// The isomorphisms `GR[A] -> prod GR(p^r, s nu_i)` for both layouts.
#[derive(Debug)]
pub struct Decomposer {
    dft: Dft,
    partition: ClassPartition,
    euclidean: Layout,
    hermitian: Option<Layout>,
    /// Component ring and its embedding into the transform ring, per class size.
    components: HashMap<usize, (Arc<GaloisRing>, Embedding)>,
}

impl Decomposer {
    pub fn new(base: Arc<GroupRing>) -> Result<Self> {
        let dft = Dft::new(base.clone())?;
        let ring = base.ring().clone();
        let group = base.group();
        let partition = ClassPartition::new(group, ring.residue_field_size())?;
        let s = ring.s();

        let euclidean_slots = partition.euclidean_layout();
        let euclidean_points = euclidean_slots
            .iter()
            .map(|slot| {
                let a = partition.classes()[slot.class].representative;
                match slot.kind {
                    SlotKind::PairIII => vec![a, group.neg_index(a)],
                    _ => vec![a],
                }
            })
            .collect();
        let euclidean = Layout {
            slots: euclidean_slots,
            points: euclidean_points,
        };

        let hermitian = if s.is_multiple_of(2) {
            let half = ring.p().pow(s / 2);
            let slots = partition.hermitian_layout()?;
            let points = slots
                .iter()
                .map(|slot| {
                    let a = partition.classes()[slot.class].representative;
                    match slot.kind {
                        SlotKind::PairIIIPrime => {
                            vec![a, group.scale_index(half, group.neg_index(a))]
                        }
                        _ => vec![a],
                    }
                })
                .collect();
            Some(Layout { slots, points })
        } else {
            None
        };

        let mut components = HashMap::new();
        for class in partition.classes() {
            let nu = class.cardinality();
            if components.contains_key(&nu) {
                continue;
            }
            let comp = if nu == 1 {
                ring.clone()
            } else {
                GaloisRing::shared(ring.p(), ring.r(), s * nu as u32)?
            };
            let emb = Embedding::new(comp.clone(), dft.transform_ring().clone())?;
            components.insert(nu, (comp, emb));
        }
        Ok(Self {
            dft,
            partition,
            euclidean,
            hermitian,
            components,
        })
    }

    pub fn base(&self) -> &Arc<GroupRing> {
        self.dft.base()
    }

    pub fn dft(&self) -> &Dft {
        &self.dft
    }

    pub fn partition(&self) -> &ClassPartition {
        &self.partition
    }

    fn layout(&self, duality: Duality) -> Result<&Layout> {
        match duality {
            Duality::Euclidean => Ok(&self.euclidean),
            Duality::Hermitian => self
                .hermitian
                .as_ref()
                .ok_or(Error::OddDegree(self.base().ring().s())),
        }
    }

    pub fn slots(&self, duality: Duality) -> Result<&[Slot]> {
        Ok(&self.layout(duality)?.slots)
    }

    /// Evaluation points of a slot (one, or two for pairs).
    pub fn points(&self, duality: Duality, slot: usize) -> Result<&[usize]> {
        Ok(&self.layout(duality)?.points[slot])
    }

    /// Class size `nu` of a slot.
    pub fn slot_degree(&self, duality: Duality, slot: usize) -> Result<usize> {
        let class = self.slots(duality)?[slot].class;
        Ok(self.partition.classes()[class].cardinality())
    }

    /// The component ring `GR(p^r, s nu)` of a slot.
    pub fn component_ring(&self, duality: Duality, slot: usize) -> Result<&Arc<GaloisRing>> {
        let nu = self.slot_degree(duality, slot)?;
        Ok(&self.components[&nu].0)
    }

    fn embedding(&self, nu: usize) -> &Embedding {
        &self.components[&nu].1
    }

    pub fn decompose(&self, x: &GroupRingElement, duality: Duality) -> Result<DecomposedElement> {
        let layout = self.layout(duality)?;
        let spectrum = self.dft.forward(x);
        let mut parts = Vec::with_capacity(layout.slots.len());
        for (slot, points) in layout.slots.iter().zip(&layout.points) {
            let nu = self.partition.classes()[slot.class].cardinality();
            let emb = self.embedding(nu);
            let comps = points
                .iter()
                .map(|&pt| emb.pull_back(&spectrum[pt]))
                .collect::<Result<Vec<_>>>()?;
            parts.push(comps);
        }
        Ok(DecomposedElement { duality, parts })
    }

    pub fn recompose(&self, d: &DecomposedElement) -> Result<GroupRingElement> {
        let layout = self.layout(d.duality)?;
        if d.parts.len() != layout.slots.len() {
            return Err(Error::InvalidParameter(format!(
                "{} components for a layout of {} slots",
                d.parts.len(),
                layout.slots.len()
            )));
        }
        let group = self.base().group();
        let big = self.dft.transform_ring();
        let ring = self.base().ring();
        let (q, s) = (ring.residue_field_size(), ring.s());
        let mut spectrum = vec![big.zero(); self.base().len()];
        for ((slot, points), comps) in layout.slots.iter().zip(&layout.points).zip(&d.parts) {
            let nu = self.partition.classes()[slot.class].cardinality();
            if comps.len() != points.len() {
                return Err(Error::InvalidParameter("pair slot needs two components".into()));
            }
            let emb = self.embedding(nu);
            for (&pt, y) in points.iter().zip(comps) {
                let mut value = emb.apply(y);
                let mut cur = pt;
                for _ in 0..nu {
                    spectrum[cur] = value.clone();
                    value = big.frobenius(&value, s);
                    cur = group.scale_index(q, cur);
                }
            }
        }
        self.dft.inverse(&spectrum)
    }

    pub fn zero(&self, duality: Duality) -> Result<DecomposedElement> {
        self.constant(duality, |ring| ring.zero())
    }

    pub fn one(&self, duality: Duality) -> Result<DecomposedElement> {
        self.constant(duality, |ring| ring.one())
    }

    fn constant(
        &self,
        duality: Duality,
        value: impl Fn(&GaloisRing) -> GrElement,
    ) -> Result<DecomposedElement> {
        let layout = self.layout(duality)?;
        let parts = (0..layout.slots.len())
            .map(|i| {
                let ring = self.component_ring(duality, i).expect("slot exists");
                vec![value(ring); layout.points[i].len()]
            })
            .collect();
        Ok(DecomposedElement { duality, parts })
    }

    /// Componentwise product.
    pub fn mul_components(&self, a: &DecomposedElement, b: &DecomposedElement) -> Result<DecomposedElement> {
        self.zip_components(a, b, |ring, x, y| ring.mul(x, y))
    }

    pub fn add_components(&self, a: &DecomposedElement, b: &DecomposedElement) -> Result<DecomposedElement> {
        self.zip_components(a, b, |ring, x, y| ring.add(x, y))
    }

    fn zip_components(
        &self,
        a: &DecomposedElement,
        b: &DecomposedElement,
        op: impl Fn(&GaloisRing, &GrElement, &GrElement) -> GrElement,
    ) -> Result<DecomposedElement> {
        if a.duality != b.duality || a.parts.len() != b.parts.len() {
            return Err(Error::RingMismatch("decompositions use different layouts".into()));
        }
        let mut parts = Vec::with_capacity(a.parts.len());
        for (i, (x, y)) in a.parts.iter().zip(&b.parts).enumerate() {
            let ring = self.component_ring(a.duality, i)?;
            parts.push(x.iter().zip(y).map(|(u, v)| op(ring, u, v)).collect());
        }
        Ok(DecomposedElement {
            duality: a.duality,
            parts,
        })
    }

    /// Image of `hat(x)` (Euclidean layout) or `tilde(x)` (Hermitian layout),
    /// computed on components:
    ///
    /// * type I: unchanged; type II of size `nu`: `sigma^(s nu / 2)`;
    ///   type III pair `(z, z')`: `(z', z)`.
    /// * type II' of size `nu`: `sigma^(s nu / 2)`; type III' pair `(y, y')`:
    ///   `(sigma^(-s/2)(y'), sigma^(s/2)(y))`.
    pub fn involution(&self, d: &DecomposedElement) -> Result<DecomposedElement> {
        let layout = self.layout(d.duality)?;
        let s = self.base().ring().s();
        let mut parts = Vec::with_capacity(d.parts.len());
        for (i, (slot, comps)) in layout.slots.iter().zip(&d.parts).enumerate() {
            let ring = self.component_ring(d.duality, i)?;
            let half_degree = ring.s() / 2;
            parts.push(match slot.kind {
                SlotKind::TypeI => comps.clone(),
                SlotKind::TypeII | SlotKind::TypeIIPrime => {
                    vec![ring.frobenius(&comps[0], half_degree)]
                }
                SlotKind::PairIII => vec![comps[1].clone(), comps[0].clone()],
                SlotKind::PairIIIPrime => vec![
                    ring.frobenius(&comps[1], ring.s() - s / 2),
                    ring.frobenius(&comps[0], s / 2),
                ],
            });
        }
        Ok(DecomposedElement {
            duality: d.duality,
            parts,
        })
    }

    /// The idempotent that is 1 in one component (`position` 0 or 1 within
    /// the slot) and 0 elsewhere.
    pub fn idempotent(&self, duality: Duality, slot: usize, position: usize) -> Result<GroupRingElement> {
        let mut d = self.zero(duality)?;
        let ring = self.component_ring(duality, slot)?;
        let entry = d.parts[slot]
            .get_mut(position)
            .ok_or_else(|| Error::InvalidParameter(format!("slot {slot} has no position {position}")))?;
        *entry = ring.one();
        self.recompose(&d)
    }

    /// Decomposition of each coefficient of an element of `R[P]`, `R = GR[A]`.
    pub fn decompose_split(&self, x: &SplitElement, duality: Duality) -> Result<Vec<DecomposedElement>> {
        x.parts.iter().map(|c| self.decompose(c, duality)).collect()
    }

    /// Componentwise value of the pairing `sum_b x_b inv(u_b)` (inv = hat or
    /// tilde), from the decomposed coefficients:
    ///
    /// * Euclidean: `sum x u` (I), `sum y sigma^(s nu/2)(v)` (II),
    ///   `(sum z w', sum z' w)` (III).
    /// * Hermitian: `sum x sigma^(s nu/2)(u)` (II'),
    ///   `(sum y sigma^(-s/2)(v'), sum y' sigma^(s/2)(v))` (III').
    pub fn pairing_components(
        &self,
        x: &[DecomposedElement],
        u: &[DecomposedElement],
    ) -> Result<DecomposedElement> {
        let duality = x.first().map_or(Duality::Euclidean, |d| d.duality);
        let mut acc = self.zero(duality)?;
        for (xb, ub) in x.iter().zip(u) {
            let term = self.mul_components(xb, &self.involution(ub)?)?;
            acc = self.add_components(&acc, &term)?;
        }
        Ok(acc)
    }

    /// True when every component is zero.
    pub fn is_zero(d: &DecomposedElement) -> bool {
        d.parts.iter().flatten().all(GrElement::is_zero)
    }
}

/// Decomposer for the coefficient ring of a split group ring.
pub fn split_decomposer(split: &SplitGroupRing) -> Result<Decomposer> {
    Decomposer::new(split.coefficient_ring().clone())
}
