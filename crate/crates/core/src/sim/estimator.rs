//! Quasiprobability cutting estimator.
//!
//! Cuts split the circuit into partitions. Every partition is run once per
//! combination of decomposition terms on its attached cuts (a variant), the
//! variant means are combined with the term coefficients, and shots are
//! spread across variants in proportion to `Π |a_j| / κ_j`.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64 as C64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};

use super::channel::{space_like_gate, time_like_identity, DecompositionSpec, LocalOp};
use super::gates::{self, dagger2, Mat2, Mat4};
use super::statevector::{simulate_statevector, StateVector, MAX_QUBITS};
use super::SimError;
use crate::circuit::CircuitIR;
use crate::graph::{find, union};
use crate::math::ceil_tolerant;

/// Upper limit on the number of full term combinations combined per estimate.
pub const MAX_COMBINATIONS: usize = 1 << 22;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CutPlacement {
    /// Space-like cut of a two-qubit gate.
    Gate { gate: usize },
    /// Time-like cut on `qubit`, just after gate `after_gate`.
    Wire { qubit: usize, after_gate: usize },
}

/// Diagonal observable on a few qubits; `values[k]` is the value when bit
/// `j` of `k` is the measured bit of `qubits[j]`.
#[derive(Clone, Debug, PartialEq)]
pub struct ObservableFactor {
    pub qubits: Vec<usize>,
    pub values: Vec<f64>,
}

impl ObservableFactor {
    pub fn eval(&self, bit_of: impl Fn(usize) -> usize) -> f64 {
        let k = self
            .qubits
            .iter()
            .enumerate()
            .fold(0, |acc, (j, &q)| acc | (bit_of(q) << j));
        self.values[k]
    }
}

/// Product of diagonal factors on disjoint qubit sets.
#[derive(Clone, Debug, PartialEq)]
pub struct ProductObservable {
    factors: Vec<ObservableFactor>,
}

impl ProductObservable {
    pub fn new(factors: Vec<ObservableFactor>) -> Result<Self, SimError> {
        let mut seen = Vec::new();
        for f in &factors {
            if f.values.len() != 1 << f.qubits.len() || f.values.iter().any(|v| v.abs() > 1.0) {
                return Err(SimError::InvalidObservable);
            }
            for &q in &f.qubits {
                if seen.contains(&q) {
                    return Err(SimError::InvalidObservable);
                }
                seen.push(q);
            }
        }
        Ok(Self { factors })
    }

    /// `Z` on every listed qubit, one factor per qubit.
    pub fn z_on(qubits: impl IntoIterator<Item = usize>) -> Self {
        Self {
            factors: qubits
                .into_iter()
                .map(|q| ObservableFactor {
                    qubits: vec![q],
                    values: vec![1.0, -1.0],
                })
                .collect(),
        }
    }

    pub fn factors(&self) -> &[ObservableFactor] {
        &self.factors
    }

    /// `f(s)` for a full-register basis index.
    pub fn value(&self, s: usize) -> f64 {
        self.factors
            .iter()
            .map(|f| f.eval(|q| (s >> q) & 1))
            .product()
    }

    /// `⟨O⟩` from an uncut statevector simulation.
    pub fn exact(&self, circuit: &CircuitIR) -> Result<f64, SimError> {
        Ok(simulate_statevector(circuit, 0)?.expectation_diag(|s| self.value(s)))
    }
}

#[derive(Clone, Debug)]
enum FragOp {
    Gate1(usize, Mat2),
    Gate2(usize, usize, Mat4),
    Side { cut: usize, side: usize, q: usize },
}

#[derive(Clone, Debug)]
struct Fragment {
    num_local: usize,
    ops: Vec<FragOp>,
    cuts: Vec<usize>,
    readout: Vec<(usize, usize)>,
    factors: Vec<usize>,
}

/// Shots per partition and per variant.
#[derive(Clone, Debug, PartialEq)]
pub struct ShotAllocation {
    pub per_partition: Vec<u64>,
    pub per_variant: Vec<Vec<u64>>,
}

impl ShotAllocation {
    pub fn total(&self) -> u64 {
        self.per_partition.iter().sum()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct EstimatorRun {
    pub estimate: f64,
    /// Combination of the exact variant means; equals `⟨O⟩`.
    pub exact: f64,
    pub variant_means: Vec<Vec<f64>>,
    pub allocation: ShotAllocation,
    pub seed: u64,
    pub shots: u64,
}

/// A cut circuit with the exact outcome distribution of every variant.
#[derive(Clone, Debug)]
pub struct CutPlan {
    specs: Vec<DecompositionSpec>,
    fragments: Vec<Fragment>,
    /// `(value, probability)` pairs per partition and variant.
    distributions: Vec<Vec<Vec<(f64, f64)>>>,
    observable: ProductObservable,
}

impl CutPlan {
    pub fn new(
        circuit: &CircuitIR,
        cuts: &[CutPlacement],
        observable: &ProductObservable,
    ) -> Result<Self, SimError> {
        circuit.validate()?;
        let specs = cuts
            .iter()
            .map(|cut| match *cut {
                CutPlacement::Gate { gate } => {
                    let g = circuit
                        .gates
                        .get(gate)
                        .ok_or(SimError::UnsupportedCut(*cut))?;
                    if g.operands.len() != 2 {
                        return Err(SimError::UnsupportedCut(*cut));
                    }
                    space_like_gate(&g.kind, &g.params).ok_or(SimError::UnsupportedCut(*cut))
                }
                CutPlacement::Wire { qubit, after_gate } => {
                    let ok = circuit
                        .gates
                        .get(after_gate)
                        .is_some_and(|g| g.operands.contains(&qubit));
                    if ok {
                        Ok(time_like_identity())
                    } else {
                        Err(SimError::UnsupportedCut(*cut))
                    }
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        let fragments = build_fragments(circuit, cuts, observable)?;
        let mut combos: usize = 1;
        for s in &specs {
            combos = combos.saturating_mul(s.terms.len());
        }
        if combos > MAX_COMBINATIONS {
            return Err(SimError::TooManyVariants);
        }
        let mut distributions = Vec::with_capacity(fragments.len());
        for frag in &fragments {
            let count = variant_count(frag, &specs);
            let mut per_variant = Vec::with_capacity(count);
            for v in 0..count {
                let terms = variant_terms(frag, &specs, v);
                per_variant.push(simulate_variant(frag, &specs, &terms, observable)?);
            }
            distributions.push(per_variant);
        }
        Ok(Self {
            specs,
            fragments,
            distributions,
            observable: observable.clone(),
        })
    }

    pub fn partitions(&self) -> usize {
        self.fragments.len()
    }

    pub fn specs(&self) -> &[DecompositionSpec] {
        &self.specs
    }

    pub fn observable(&self) -> &ProductObservable {
        &self.observable
    }

    /// Cut indices attached to each partition.
    pub fn attached_cuts(&self) -> Vec<Vec<usize>> {
        self.fragments.iter().map(|f| f.cuts.clone()).collect()
    }

    /// `I_c = R · Π_{attached} κ² · Π_{others} τ`.
    pub fn overhead(&self, c: usize) -> f64 {
        let frag = &self.fragments[c];
        self.specs
            .iter()
            .enumerate()
            .fold(self.partitions() as f64, |acc, (j, s)| {
                if frag.cuts.contains(&j) {
                    acc * s.kappa() * s.kappa()
                } else {
                    acc * s.tau()
                }
            })
    }

    /// Per-partition budgets `⌈I_c/ε²⌉` split over variants by largest remainder.
    pub fn allocate(&self, eps: f64) -> ShotAllocation {
        let mut per_partition = Vec::new();
        let mut per_variant = Vec::new();
        for (c, frag) in self.fragments.iter().enumerate() {
            let n_c = ceil_tolerant(self.overhead(c) / (eps * eps));
            let count = variant_count(frag, &self.specs);
            let weights: Vec<f64> = (0..count)
                .map(|v| {
                    let terms = variant_terms(frag, &self.specs, v);
                    frag.cuts
                        .iter()
                        .zip(&terms)
                        .map(|(&j, &t)| self.specs[j].terms[t].coef.abs() / self.specs[j].kappa())
                        .product()
                })
                .collect();
            per_partition.push(n_c);
            per_variant.push(largest_remainder(n_c, &weights));
        }
        ShotAllocation {
            per_partition,
            per_variant,
        }
    }

    pub fn variant_exact_means(&self) -> Vec<Vec<f64>> {
        self.distributions
            .iter()
            .map(|vs| {
                vs.iter()
                    .map(|d| d.iter().map(|&(v, p)| v * p).sum())
                    .collect()
            })
            .collect()
    }

    /// Exact `⟨O⟩` reassembled from the variant means.
    pub fn exact_value(&self) -> f64 {
        self.combine(&self.variant_exact_means())
    }

    pub fn estimate(&self, eps: f64, seed: u64) -> EstimatorRun {
        self.estimate_with(self.allocate(eps), seed)
    }

    pub fn estimate_with(&self, allocation: ShotAllocation, seed: u64) -> EstimatorRun {
        let mut means = Vec::with_capacity(self.fragments.len());
        for (c, dists) in self.distributions.iter().enumerate() {
            let mut row = Vec::with_capacity(dists.len());
            for (v, dist) in dists.iter().enumerate() {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(((c as u64) << 32) | v as u64);
                row.push(sample_mean(dist, allocation.per_variant[c][v], &mut rng));
            }
            means.push(row);
        }
        EstimatorRun {
            estimate: self.combine(&means),
            exact: self.exact_value(),
            variant_means: means,
            shots: allocation.total(),
            allocation,
            seed,
        }
    }

    /// `Σ_i Π_j a_j(i_j) Π_c F_c(i)` over every term combination.
    fn combine(&self, means: &[Vec<f64>]) -> f64 {
        let radix: Vec<usize> = self.specs.iter().map(|s| s.terms.len()).collect();
        let total: usize = radix.iter().product();
        let mut digits = vec![0usize; radix.len()];
        let mut sum = 0.0;
        for _ in 0..total {
            let coef: f64 = digits
                .iter()
                .enumerate()
                .map(|(j, &t)| self.specs[j].terms[t].coef)
                .product();
            let mut value = coef;
            for (c, frag) in self.fragments.iter().enumerate() {
                let v = frag
                    .cuts
                    .iter()
                    .fold(0, |acc, &j| acc * radix[j] + digits[j]);
                value *= means[c][v];
            }
            sum += value;
            for j in (0..digits.len()).rev() {
                digits[j] += 1;
                if digits[j] < radix[j] {
                    break;
                }
                digits[j] = 0;
            }
        }
        sum
    }
}

/// Plans and runs one estimate.
pub fn cut_estimate(
    circuit: &CircuitIR,
    cuts: &[CutPlacement],
    observable: &ProductObservable,
    eps: f64,
    seed: u64,
) -> Result<EstimatorRun, SimError> {
    Ok(CutPlan::new(circuit, cuts, observable)?.estimate(eps, seed))
}

fn variant_count(frag: &Fragment, specs: &[DecompositionSpec]) -> usize {
    frag.cuts.iter().map(|&j| specs[j].terms.len()).product()
}

/// Term index per attached cut; the first attached cut is the most significant digit.
fn variant_terms(frag: &Fragment, specs: &[DecompositionSpec], mut v: usize) -> Vec<usize> {
    let mut terms = vec![0; frag.cuts.len()];
    for (k, &j) in frag.cuts.iter().enumerate().rev() {
        let n = specs[j].terms.len();
        terms[k] = v % n;
        v /= n;
    }
    terms
}

fn largest_remainder(total: u64, weights: &[f64]) -> Vec<u64> {
    let sum: f64 = weights.iter().sum();
    let exact: Vec<f64> = weights.iter().map(|w| total as f64 * w / sum).collect();
    let mut counts: Vec<u64> = exact.iter().map(|&x| x as u64).collect();
    let assigned: u64 = counts.iter().sum();
    let mut order: Vec<usize> = (0..weights.len()).collect();
    order.sort_by(|&a, &b| {
        let (fa, fb) = (exact[a] - counts[a] as f64, exact[b] - counts[b] as f64);
        fb.total_cmp(&fa).then(a.cmp(&b))
    });
    for &k in order.iter().take(total.saturating_sub(assigned) as usize) {
        counts[k] += 1;
    }
    counts
}

/// Mean of `shots` draws from a finite distribution; zero when no shots.
fn sample_mean(dist: &[(f64, f64)], shots: u64, rng: &mut ChaCha8Rng) -> f64 {
    if shots == 0 {
        return 0.0;
    }
    let mut remaining = shots;
    let mut mass = 1.0;
    let mut sum = 0.0;
    for (k, &(value, p)) in dist.iter().enumerate() {
        if remaining == 0 {
            break;
        }
        let draws = if k + 1 == dist.len() || mass <= p {
            remaining
        } else {
            let q = (p / mass).clamp(0.0, 1.0);
            Binomial::new(remaining, q).map_or(0, |b| b.sample(rng))
        };
        sum += draws as f64 * value;
        remaining -= draws;
        mass -= p;
    }
    sum / shots as f64
}

fn build_fragments(
    circuit: &CircuitIR,
    cuts: &[CutPlacement],
    observable: &ProductObservable,
) -> Result<Vec<Fragment>, SimError> {
    let n = circuit.num_qubits;
    let mut wire_cuts: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    let mut gate_cut = vec![None; circuit.gates.len()];
    for (k, cut) in cuts.iter().enumerate() {
        match *cut {
            CutPlacement::Gate { gate } => {
                if gate_cut[gate].replace(k).is_some() {
                    return Err(SimError::UnsupportedCut(*cut));
                }
            }
            CutPlacement::Wire { qubit, after_gate } => {
                if wire_cuts[qubit].iter().any(|&(g, _)| g == after_gate) {
                    return Err(SimError::UnsupportedCut(*cut));
                }
                wire_cuts[qubit].push((after_gate, k));
            }
        }
    }
    for w in &mut wire_cuts {
        w.sort_unstable();
    }
    let mut offset = vec![0; n + 1];
    for q in 0..n {
        offset[q + 1] = offset[q] + wire_cuts[q].len() + 1;
    }
    let seg = |q: usize, g: usize| offset[q] + wire_cuts[q].iter().filter(|&&(p, _)| p < g).count();
    let total_segs = offset[n];
    let mut parent: Vec<usize> = (0..total_segs).collect();
    for (g, gate) in circuit.gates.iter().enumerate() {
        if let (&[a, b], None) = (gate.operands.as_slice(), gate_cut[g]) {
            union(&mut parent, seg(a, g), seg(b, g));
        }
    }
    let mut part_of_root = vec![usize::MAX; total_segs];
    let mut part_of_seg = vec![0; total_segs];
    let mut local_of_seg = vec![0; total_segs];
    let mut frags: Vec<Fragment> = Vec::new();
    for s in 0..total_segs {
        let root = find(&mut parent, s);
        if part_of_root[root] == usize::MAX {
            part_of_root[root] = frags.len();
            frags.push(Fragment {
                num_local: 0,
                ops: Vec::new(),
                cuts: Vec::new(),
                readout: Vec::new(),
                factors: Vec::new(),
            });
        }
        let p = part_of_root[root];
        part_of_seg[s] = p;
        local_of_seg[s] = frags[p].num_local;
        frags[p].num_local += 1;
    }
    if frags.len() < 2 {
        return Err(SimError::NotDisconnected);
    }
    if let Some(f) = frags.iter().find(|f| f.num_local > MAX_QUBITS) {
        return Err(SimError::TooManyQubits {
            qubits: f.num_local,
            max: MAX_QUBITS,
        });
    }
    let side = |frags: &mut Vec<Fragment>, s: usize, cut: usize, which: usize| {
        let p = part_of_seg[s];
        frags[p].ops.push(FragOp::Side {
            cut,
            side: which,
            q: local_of_seg[s],
        });
        if !frags[p].cuts.contains(&cut) {
            frags[p].cuts.push(cut);
        }
        p
    };
    for (g, gate) in circuit.gates.iter().enumerate() {
        match (gate.operands.as_slice(), gate_cut[g]) {
            (&[a, b], Some(k)) => {
                let pa = side(&mut frags, seg(a, g), k, 0);
                let pb = side(&mut frags, seg(b, g), k, 1);
                if pa == pb {
                    return Err(SimError::NotDisconnected);
                }
            }
            (&[q], _) => {
                let m = gates::one_qubit(&gate.kind, &gate.params)
                    .ok_or_else(|| SimError::UnsupportedGate(gate.kind.clone()))?;
                let s = seg(q, g);
                frags[part_of_seg[s]]
                    .ops
                    .push(FragOp::Gate1(local_of_seg[s], m));
            }
            (&[a, b], None) => {
                let m = gates::two_qubit(&gate.kind, &gate.params)
                    .ok_or_else(|| SimError::UnsupportedGate(gate.kind.clone()))?;
                let (sa, sb) = (seg(a, g), seg(b, g));
                frags[part_of_seg[sa]].ops.push(FragOp::Gate2(
                    local_of_seg[sa],
                    local_of_seg[sb],
                    m,
                ));
            }
            _ => return Err(SimError::UnsupportedGate(gate.kind.clone())),
        }
        for &q in &gate.operands {
            for &(p, k) in &wire_cuts[q] {
                if p == g {
                    let before = seg(q, g);
                    let pa = side(&mut frags, before, k, 0);
                    let pb = side(&mut frags, before + 1, k, 1);
                    if pa == pb {
                        return Err(SimError::NotDisconnected);
                    }
                }
            }
        }
    }
    for f in &mut frags {
        f.cuts.sort_unstable();
    }
    for (fi, factor) in observable.factors().iter().enumerate() {
        let mut owner = None;
        for &q in &factor.qubits {
            if q >= n {
                return Err(SimError::InvalidObservable);
            }
            let last = offset[q + 1] - 1;
            let p = part_of_seg[last];
            if owner.is_some_and(|o| o != p) {
                return Err(SimError::IncompatibleObservable);
            }
            owner = Some(p);
            frags[p].readout.push((q, local_of_seg[last]));
        }
        if let Some(p) = owner {
            frags[p].factors.push(fi);
        }
    }
    Ok(frags)
}

fn split_measure(
    branches: Vec<(f64, StateVector)>,
    q: usize,
    to_z: &Mat2,
    signed: bool,
    keep: bool,
) -> Vec<(f64, StateVector)> {
    let back = dagger2(to_z);
    let mut out = Vec::with_capacity(2 * branches.len());
    for (sign, mut sv) in branches {
        sv.apply_1q(q, to_z);
        let (mut zero, mut one) = sv.project(q);
        if keep {
            zero.apply_1q(q, &back);
            one.apply_1q(q, &back);
        }
        for (s, b) in [(sign, zero), (if signed { -sign } else { sign }, one)] {
            if b.norm_sqr() > 1e-300 {
                out.push((s, b));
            }
        }
    }
    out
}

fn simulate_variant(
    frag: &Fragment,
    specs: &[DecompositionSpec],
    terms: &[usize],
    observable: &ProductObservable,
) -> Result<Vec<(f64, f64)>, SimError> {
    let mut branches = vec![(1.0, StateVector::basis(frag.num_local, 0)?)];
    for op in &frag.ops {
        match op {
            FragOp::Gate1(q, m) => branches.iter_mut().for_each(|(_, sv)| sv.apply_1q(*q, m)),
            FragOp::Gate2(a, b, m) => branches
                .iter_mut()
                .for_each(|(_, sv)| sv.apply_2q(*a, *b, m)),
            FragOp::Side { cut, side, q } => {
                let pos = frag
                    .cuts
                    .iter()
                    .position(|c| c == cut)
                    .expect("attached cut");
                let term = &specs[*cut].terms[terms[pos]];
                let ops: &[LocalOp] = if term.sides.len() == 1 {
                    &term.sides[0]
                } else {
                    &term.sides[*side]
                };
                for local in ops {
                    match (local, term.sides.len(), side) {
                        (LocalOp::Unitary(u), _, _) => {
                            branches.iter_mut().for_each(|(_, sv)| sv.apply_1q(*q, u))
                        }
                        (LocalOp::Measure { basis, signed }, _, _) => {
                            branches = split_measure(branches, *q, &basis.to_z(), *signed, true);
                        }
                        (LocalOp::MeasurePrepare { basis, signed, .. }, 1, 0) => {
                            branches = split_measure(branches, *q, &basis.to_z(), *signed, false);
                        }
                        (LocalOp::MeasurePrepare { prep, .. }, 1, _) => {
                            let u = prep.from_zero();
                            branches.iter_mut().for_each(|(_, sv)| sv.apply_1q(*q, &u));
                        }
                        _ => unreachable!("measure-and-prepare terms act on one wire"),
                    }
                }
            }
        }
    }
    let mut dist: Vec<(f64, f64)> = Vec::new();
    for (sign, sv) in &branches {
        for (s, amp) in sv.amplitudes().iter().enumerate() {
            let p = C64::norm_sqr(amp);
            if p == 0.0 {
                continue;
            }
            let bit_of = |q: usize| {
                let local = frag
                    .readout
                    .iter()
                    .find(|r| r.0 == q)
                    .expect("readout qubit")
                    .1;
                (s >> local) & 1
            };
            let f: f64 = frag
                .factors
                .iter()
                .map(|&fi| observable.factors()[fi].eval(bit_of))
                .product();
            dist.push((sign * f, p));
        }
    }
    dist.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut merged: Vec<(f64, f64)> = Vec::new();
    for (v, p) in dist {
        match merged.last_mut() {
            Some(last) if last.0 == v => last.1 += p,
            _ => merged.push((v, p)),
        }
    }
    Ok(merged)
}
