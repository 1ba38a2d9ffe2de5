//! Structural analysis: commutator series, centers, radicals, Fitting and
//! Sylow subgroups, socle decomposition, and alternating-group recognition.
//!
//! Every function is deterministic given the seed state it receives. Results
//! that may rest on sampling rather than exhaustive search carry a
//! [`Confidence`] tag; sampled results are always valid subgroups, but only
//! lower bounds for the object they approximate.

use std::collections::{HashMap, VecDeque};

use num_traits::ToPrimitive;

use crate::arith::{factorial, is_prime, is_prime_power_of, p_adic_split, prime_divisors, BigCount};
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::group::GeneratedGroup;
use crate::perm::Permutation;
use crate::rng::SeedState;

/// Whether a structural result was verified exhaustively or produced by
/// sampling (in which case it is a certified lower bound, not an exact value).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Confidence {
    Exact,
    Sampled,
}

fn commute(a: &Permutation, b: &Permutation) -> bool {
    a.mul(b) == b.mul(a)
}

fn push_unique(list: &mut Vec<Permutation>, x: Permutation) {
    if !x.is_identity() && !list.contains(&x) {
        list.push(x);
    }
}

/// The `p`-part of one element: a power of it whose order is the full
/// `p`-power dividing the element order.
#[must_use]
pub fn element_p_part(x: &Permutation, p: u64) -> Permutation {
    let order = x.order();
    let (_, cofactor) = p_adic_split(&order, p);
    x.pow(&cofactor)
}

/// Smallest normal subgroup of `ambient` containing `seeds`.
///
/// The closure is grown one generator at a time: a seed or conjugate is
/// adopted only when a membership sift shows it is not already inside. Every
/// adopted generator at least doubles the closure, so the generating set
/// stays within `log2 |closure|` elements no matter how large the group gets.
#[must_use]
pub fn normal_closure(ambient: &GeneratedGroup, seeds: &[Permutation]) -> GeneratedGroup {
    let degree = ambient.degree();
    let mut gens: Vec<Permutation> = Vec::new();
    let mut closure = GeneratedGroup::trivial(degree);
    let mut worklist: VecDeque<Permutation> = VecDeque::new();
    for s in seeds {
        if !closure.contains(s) {
            gens.push(s.clone());
            closure = GeneratedGroup::from_generators_unchecked(degree, gens.clone());
            worklist.push_back(s.clone());
        }
    }
    while let Some(x) = worklist.pop_front() {
        for s in ambient.generators() {
            let c = x.conjugate_by(s);
            if !closure.contains(&c) {
                gens.push(c.clone());
                closure = GeneratedGroup::from_generators_unchecked(degree, gens.clone());
                worklist.push_back(c);
            }
        }
    }
    closure
}

/// Commutator subgroup: normal closure of the generator commutators.
#[must_use]
pub fn derived_subgroup(g: &GeneratedGroup) -> GeneratedGroup {
    let gens = g.generators();
    let mut comms = Vec::new();
    for i in 0..gens.len() {
        for j in (i + 1)..gens.len() {
            let c = Permutation::commutator(&gens[i], &gens[j]);
            if !c.is_identity() {
                comms.push(c);
            }
        }
    }
    normal_closure(g, &comms)
}

/// Derived series starting at `g`, strictly decreasing, ending at the first
/// repeated term (the trivial group exactly when `g` is solvable).
#[must_use]
pub fn derived_series(g: &GeneratedGroup) -> Vec<GeneratedGroup> {
    let mut series = vec![g.clone()];
    loop {
        let last = series.last().expect("series is never empty");
        let next = derived_subgroup(last);
        if next.order() == last.order() {
            return series;
        }
        let reached_bottom = next.is_trivial();
        series.push(next);
        if reached_bottom {
            return series;
        }
    }
}

/// Lower central series `g = G1 >= G2 >= ...` with `G_{i+1} = [G_i, g]`,
/// ending at the first repeated term.
#[must_use]
pub fn lower_central_series(g: &GeneratedGroup) -> Vec<GeneratedGroup> {
    let mut series = vec![g.clone()];
    loop {
        let last = series.last().expect("series is never empty");
        // For N normal in G, [N, G] is the normal closure of the commutators
        // of the generators.
        let mut comms = Vec::new();
        for x in last.generators() {
            for y in g.generators() {
                let c = Permutation::commutator(x, y);
                if !c.is_identity() {
                    comms.push(c);
                }
            }
        }
        let next = normal_closure(g, &comms);
        if next.order() == last.order() {
            return series;
        }
        let reached_bottom = next.is_trivial();
        series.push(next);
        if reached_bottom {
            return series;
        }
    }
}

/// Nilpotency class, or `None` when the lower central series stalls above
/// the trivial group.
#[must_use]
pub fn nilpotency_class(g: &GeneratedGroup) -> Option<u32> {
    let series = lower_central_series(g);
    let class = (series.len() - 1) as u32;
    series
        .last()
        .expect("series is never empty")
        .is_trivial()
        .then_some(class)
}

#[must_use]
pub fn is_abelian(g: &GeneratedGroup) -> bool {
    let gens = g.generators();
    for i in 0..gens.len() {
        for j in (i + 1)..gens.len() {
            if !commute(&gens[i], &gens[j]) {
                return false;
            }
        }
    }
    true
}

/// Groups of prime-power order short-circuit; everything else runs the
/// lower central series.
#[must_use]
pub fn is_nilpotent(g: &GeneratedGroup) -> bool {
    let order = g.order();
    if order == BigCount::from(1u32) {
        return true;
    }
    if let Ok(primes) = prime_divisors(&order) {
        if primes.len() == 1 {
            return true;
        }
    }
    nilpotency_class(g).is_some()
}

/// Class at most two, decided at any scale: it holds exactly when every
/// commutator of two generators commutes with every generator.
#[must_use]
pub fn has_class_at_most_two(g: &GeneratedGroup) -> bool {
    let gens = g.generators();
    for i in 0..gens.len() {
        for j in (i + 1)..gens.len() {
            let c = Permutation::commutator(&gens[i], &gens[j]);
            if c.is_identity() {
                continue;
            }
            if gens.iter().any(|z| !commute(&c, z)) {
                return false;
            }
        }
    }
    true
}

#[must_use]
pub fn is_solvable(g: &GeneratedGroup) -> bool {
    derived_series(g)
        .last()
        .expect("series is never empty")
        .is_trivial()
}

/// Center, by scanning all elements; abelian groups short-circuit.
pub fn center(g: &GeneratedGroup, caps: &Caps) -> Result<GeneratedGroup> {
    if is_abelian(g) {
        return Ok(g.clone());
    }
    let elems = g.elements(caps.element_scan)?;
    let mut central = Vec::new();
    for e in elems {
        if !e.is_identity() && g.generators().iter().all(|s| commute(&e, s)) {
            central.push(e);
        }
    }
    Ok(GeneratedGroup::from_generators_unchecked(g.degree(), central))
}

/// Elements of `g` commuting with every element of `targets`, by scan.
pub fn centralizer_of_set(
    g: &GeneratedGroup,
    targets: &[Permutation],
    caps: &Caps,
) -> Result<GeneratedGroup> {
    let elems = g.elements(caps.element_scan)?;
    let mut central = Vec::new();
    for e in elems {
        if !e.is_identity() && targets.iter().all(|t| commute(&e, t)) {
            central.push(e);
        }
    }
    Ok(GeneratedGroup::from_generators_unchecked(g.degree(), central))
}

/// One representative per conjugacy class, exhaustively. The representative
/// of each class is its smallest element; the list is sorted.
pub fn exact_class_reps(g: &GeneratedGroup, max_order: u64) -> Result<Vec<Permutation>> {
    let elems = g.elements(max_order)?;
    let index: HashMap<&Permutation, usize> =
        elems.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let mut visited = vec![false; elems.len()];
    let mut reps = Vec::new();
    for start in 0..elems.len() {
        if visited[start] {
            continue;
        }
        // `start` is minimal in its class: all smaller elements are in
        // earlier classes.
        reps.push(elems[start].clone());
        visited[start] = true;
        let mut queue = vec![start];
        let mut qi = 0;
        while qi < queue.len() {
            let at = queue[qi];
            for s in g.generators() {
                let c = elems[at].conjugate_by(s);
                let j = index[&c];
                if !visited[j] {
                    visited[j] = true;
                    queue.push(j);
                }
            }
            qi += 1;
        }
    }
    Ok(reps)
}

/// Class representatives when feasible, otherwise a deterministic sampled
/// candidate list (generators plus seeded random draws) tagged `Sampled`.
pub fn conjugacy_class_reps(
    g: &GeneratedGroup,
    max_order: u64,
    samples: u32,
    rng: &mut SeedState,
) -> (Vec<Permutation>, Confidence) {
    if let Ok(reps) = exact_class_reps(g, max_order) {
        return (reps, Confidence::Exact);
    }
    let mut candidates = vec![Permutation::identity(g.degree())];
    for s in g.generators() {
        push_unique(&mut candidates, s.clone());
    }
    for _ in 0..samples {
        push_unique(&mut candidates, g.random_element(rng));
    }
    (candidates, Confidence::Sampled)
}

/// Largest solvable normal subgroup. Solvable groups short-circuit; otherwise
/// the radical is grown through solvable normal closures of class
/// representatives. With exact representatives the result is exact: any
/// strictly larger solvable normal subgroup would contain the closure of a
/// representative outside the current radical, and that closure is tested.
pub fn solvable_radical(
    g: &GeneratedGroup,
    caps: &Caps,
    rng: &mut SeedState,
) -> (GeneratedGroup, Confidence) {
    if is_solvable(g) {
        return (g.clone(), Confidence::Exact);
    }
    let (reps, confidence) = conjugacy_class_reps(g, caps.element_scan, caps.sample_budget, rng);
    let mut radical = GeneratedGroup::trivial(g.degree());
    loop {
        let mut grew = false;
        for r in &reps {
            if r.is_identity() || radical.contains(r) {
                continue;
            }
            let mut seeds: Vec<Permutation> = Vec::new();
            for x in radical.generators() {
                push_unique(&mut seeds, x.clone());
            }
            seeds.push(r.clone());
            let candidate = normal_closure(g, &seeds);
            if is_solvable(&candidate) {
                radical = candidate;
                grew = true;
            }
        }
        if !grew {
            return (radical, confidence);
        }
    }
}

/// Largest normal nilpotent subgroup. Nilpotent groups short-circuit. The
/// exact path uses the characterization: for each prime `p`, the `p`-core is
/// generated by the `p`-elements whose normal closure is a `p`-group, and it
/// suffices to test class representatives. The sampled path tests the same
/// condition on a candidate list seeded from the derived series, so the
/// result is always a normal nilpotent subgroup, possibly not maximal.
pub fn fitting_subgroup(
    g: &GeneratedGroup,
    caps: &Caps,
    rng: &mut SeedState,
) -> (GeneratedGroup, Confidence) {
    if is_nilpotent(g) {
        return (g.clone(), Confidence::Exact);
    }
    let primes = prime_divisors(&g.order()).unwrap_or_default();
    let (reps, confidence) = conjugacy_class_reps(g, caps.element_scan, caps.sample_budget, rng);
    let mut candidates = reps;
    if confidence == Confidence::Sampled {
        // The tail of the derived series is a reliable source: its last
        // nontrivial term is abelian and normal, so the p-parts of its
        // generators always qualify.
        for term in derived_series(g) {
            for x in term.generators() {
                push_unique(&mut candidates, x.clone());
            }
        }
    }
    let mut core_gens: Vec<Permutation> = Vec::new();
    for &p in &primes {
        for r in &candidates {
            let x = element_p_part(r, p);
            if x.is_identity() {
                continue;
            }
            let closure = normal_closure(g, std::slice::from_ref(&x));
            if is_prime_power_of(&closure.order(), p) {
                for y in closure.generators() {
                    push_unique(&mut core_gens, y.clone());
                }
            }
        }
    }
    let fitting = GeneratedGroup::from_generators_unchecked(g.degree(), core_gens);
    (fitting, confidence)
}

/// The minimal normal subgroups, as the minimal elements among normal
/// closures of class representatives. Exact when the representatives are.
pub fn socle_minimal_normals(
    g: &GeneratedGroup,
    caps: &Caps,
    rng: &mut SeedState,
) -> (Vec<GeneratedGroup>, Confidence) {
    let (mut reps, mut confidence) =
        conjugacy_class_reps(g, caps.element_scan, caps.sample_budget, rng);
    if reps.len() as u64 > caps.class_reps {
        reps.truncate(caps.class_reps as usize);
        confidence = Confidence::Sampled;
    }
    let mut closures: Vec<GeneratedGroup> = Vec::new();
    for r in &reps {
        if r.is_identity() {
            continue;
        }
        let n = normal_closure(g, std::slice::from_ref(r));
        if closures.iter().all(|m| !m.same_group(&n)) {
            closures.push(n);
        }
    }
    let minimal: Vec<GeneratedGroup> = closures
        .iter()
        .filter(|n| {
            closures
                .iter()
                .all(|m| !(m.order() < n.order() && m.is_subgroup_of(n)))
        })
        .cloned()
        .collect();
    (minimal, confidence)
}

/// A Sylow `p`-subgroup attempt. `complete` reports whether the full Sylow
/// order was reached; the group is a `p`-subgroup either way.
#[derive(Debug, Clone)]
pub struct SylowSubgroup {
    pub group: GeneratedGroup,
    pub complete: bool,
}

/// Sylow `p`-subgroup. Nilpotent groups take the generator-`p`-part
/// shortcut. Small groups grow deterministically by scanning `p`-elements;
/// a partial `p`-subgroup always extends inside some Sylow subgroup, so the
/// scan cannot stall. Larger groups grow from seeded random `p`-parts under
/// a budget and may come back incomplete.
pub fn sylow_subgroup(
    g: &GeneratedGroup,
    p: u64,
    caps: &Caps,
    rng: &mut SeedState,
) -> Result<SylowSubgroup> {
    if !is_prime(p) {
        return Err(Error::NotPrime { value: p });
    }
    let order = g.order();
    let (valuation, _) = p_adic_split(&order, p);
    if valuation == 0 {
        return Ok(SylowSubgroup {
            group: GeneratedGroup::trivial(g.degree()),
            complete: true,
        });
    }
    let target = BigCount::from(p).pow(valuation);

    if is_nilpotent(g) {
        let gens: Vec<Permutation> = g
            .generators()
            .iter()
            .map(|x| element_p_part(x, p))
            .filter(|x| !x.is_identity())
            .collect();
        let sylow = GeneratedGroup::from_generators_unchecked(g.degree(), gens);
        debug_assert_eq!(sylow.order(), target);
        return Ok(SylowSubgroup {
            group: sylow,
            complete: true,
        });
    }

    let extend = |current: &GeneratedGroup, x: &Permutation| -> Option<GeneratedGroup> {
        let mut gens: Vec<Permutation> = Vec::new();
        for y in current.generators() {
            push_unique(&mut gens, y.clone());
        }
        push_unique(&mut gens, x.clone());
        let candidate = GeneratedGroup::from_generators_unchecked(g.degree(), gens);
        is_prime_power_of(&candidate.order(), p).then_some(candidate)
    };

    if order <= BigCount::from(caps.exact_sylow) {
        let elems = g.elements(caps.exact_sylow)?;
        let p_elems: Vec<&Permutation> = elems
            .iter()
            .filter(|e| !e.is_identity() && is_prime_power_of(&e.order(), p))
            .collect();
        let mut sylow = GeneratedGroup::trivial(g.degree());
        while sylow.order() < target {
            let step = p_elems
                .iter()
                .filter(|x| !sylow.contains(x))
                .find_map(|x| extend(&sylow, x));
            match step {
                Some(next) => sylow = next,
                None => unreachable!("a proper p-subgroup always extends"),
            }
        }
        return Ok(SylowSubgroup {
            group: sylow,
            complete: true,
        });
    }

    let mut sylow = GeneratedGroup::trivial(g.degree());
    for x in g.generators() {
        if sylow.order() == target {
            break;
        }
        let h = element_p_part(x, p);
        if h.is_identity() || sylow.contains(&h) {
            continue;
        }
        if let Some(next) = extend(&sylow, &h) {
            sylow = next;
        }
    }
    let mut stagnant = 0u32;
    for _ in 0..caps.sylow_budget {
        if sylow.order() == target || stagnant >= caps.sylow_stagnation {
            break;
        }
        let h = element_p_part(&g.random_element(rng), p);
        if h.is_identity() || sylow.contains(&h) {
            stagnant += 1;
            continue;
        }
        match extend(&sylow, &h) {
            Some(next) => {
                sylow = next;
                stagnant = 0;
            }
            None => stagnant += 1,
        }
    }
    let complete = sylow.order() == target;
    Ok(SylowSubgroup {
        group: sylow,
        complete,
    })
}

/// A maximal abelian subgroup, grown greedily from the center in sorted
/// element order; the result equals its own centralizer, which the final
/// pass re-checks.
pub fn maximal_abelian_subgroup(g: &GeneratedGroup, caps: &Caps) -> Result<GeneratedGroup> {
    let elems = g.elements(caps.element_scan)?;
    let mut gens: Vec<Permutation> = Vec::new();
    for e in &elems {
        if !e.is_identity() && g.generators().iter().all(|s| commute(e, s)) {
            gens.push(e.clone());
        }
    }
    let mut current = GeneratedGroup::from_generators_unchecked(g.degree(), gens.clone());
    loop {
        let next = elems
            .iter()
            .find(|e| !e.is_identity() && !current.contains(e) && gens.iter().all(|a| commute(e, a)));
        match next {
            Some(e) => {
                gens.push(e.clone());
                current = GeneratedGroup::from_generators_unchecked(g.degree(), gens.clone());
            }
            None => break,
        }
    }
    debug_assert!(
        elems
            .iter()
            .all(|e| current.contains(e) || gens.iter().any(|a| !commute(e, a))),
        "result must equal its own centralizer"
    );
    Ok(current)
}

/// Recognizes alternating groups by order and verified simplicity.
///
/// Returns `Some(a)` when `g` is the alternating group on `a` letters for
/// `5 <= a <= 20`, `None` when it provably is not, and an error when its
/// order matches but exceeds the exhaustive-verification cap. The one order
/// collision in range, 20160, is resolved by element orders: the alternating
/// group on 8 letters has elements of order 6 and the other simple group of
/// that order has none.
pub fn recognize_alternating(g: &GeneratedGroup, caps: &Caps) -> Result<Option<u32>> {
    let order = g.order();
    let two_orders = &order * 2u32;
    let Some(a) = (5u64..=20).find(|&a| factorial(a) == two_orders) else {
        return Ok(None);
    };
    if order > BigCount::from(caps.recognition) {
        return Err(Error::CapExceeded {
            what: "alternating recognition",
            value: order.to_u64().unwrap_or(u64::MAX),
            cap: caps.recognition,
        });
    }
    let reps = exact_class_reps(g, caps.recognition)?;
    for r in &reps {
        if r.is_identity() {
            continue;
        }
        if normal_closure(g, std::slice::from_ref(r)).order() != order {
            return Ok(None);
        }
    }
    if a == 8 {
        let six = BigCount::from(6u32);
        let elems = g.elements(caps.recognition)?;
        if !elems.iter().any(|e| e.order() == six) {
            return Ok(None);
        }
    }
    Ok(Some(a as u32))
}
