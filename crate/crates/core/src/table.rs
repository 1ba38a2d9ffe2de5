//! Finite groups flattened to explicit multiplication tables.
//!
//! Once a group is small enough to tabulate (order at most
//! [`MAX_TABLE_ORDER`]), exhaustive questions become cheap: complete
//! subgroup enumeration, per-subgroup commutator structure, and
//! brute-force automorphism counting.  Elements are dense indices
//! `0..n` with index `0` the identity, and `table[i * n + j]` holds the
//! product `i * j` under the same left-to-right convention as
//! [`Permutation`] composition.

use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::group::GeneratedGroup;
use crate::perm::Permutation;
use crate::rng::SeedState;

/// Hard representation limit for table groups (bitsets are fixed-width).
pub const MAX_TABLE_ORDER: usize = 512;

/// Orders up to this bound get every triple checked for associativity;
/// larger tables are validated on a fixed-seed random sample of triples.
const EXHAUSTIVE_ASSOC_ORDER: usize = 128;

/// Number of sampled triples used to validate large tables.
const SAMPLED_ASSOC_TRIPLES: usize = 100_000;

/// Fixed-width bitset over element indices `0..MAX_TABLE_ORDER`.
type Bits = [u64; MAX_TABLE_ORDER / 64];

#[inline]
fn bit_get(bits: &Bits, i: usize) -> bool {
    bits[i >> 6] >> (i & 63) & 1 == 1
}

#[inline]
fn bit_set(bits: &mut Bits, i: usize) {
    bits[i >> 6] |= 1 << (i & 63);
}

fn bit_count(bits: &Bits) -> usize {
    bits.iter().map(|w| w.count_ones() as usize).sum()
}

fn bits_to_members(bits: &Bits, n: usize) -> Vec<u16> {
    (0..n as u16).filter(|&i| bit_get(bits, i as usize)).collect()
}

/// A finite group stored as a full multiplication table.
///
/// Alongside the table itself, every element keeps a faithful permutation
/// image: tables built from a [`GeneratedGroup`] remember the original
/// permutations (so subgroups convert back into the original action), and
/// tables parsed from text use the right-regular representation.
#[derive(Clone)]
pub struct TableGroup {
    n: usize,
    table: Vec<u16>,
    inverses: Vec<u16>,
    orders: Vec<u32>,
    perms: Vec<Permutation>,
}

impl std::fmt::Debug for TableGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "TableGroup(order {})", self.n)
    }
}

impl TableGroup {
    /// Tabulates a permutation group, failing with `CapExceeded` if its
    /// order is larger than `cap` (or the hard representation limit).
    pub fn from_generated(group: &GeneratedGroup, cap: u64) -> Result<TableGroup> {
        let effective = cap.min(MAX_TABLE_ORDER as u64);
        let elements = group.elements(effective)?;
        let n = elements.len();
        debug_assert_eq!(elements[0], Permutation::identity(group.degree()));
        let mut table = vec![0u16; n * n];
        for (i, a) in elements.iter().enumerate() {
            for (j, b) in elements.iter().enumerate() {
                let product = a.mul(b);
                let k = elements
                    .binary_search(&product)
                    .expect("product of group elements stays in the group");
                table[i * n + j] = k as u16;
            }
        }
        Ok(Self::finish(n, table, elements))
    }

    /// Parses a whitespace-separated table: the order `n` followed by
    /// `n * n` entries in row-major order, using 0-based element labels
    /// with element `0` the identity.  The table is validated: every row
    /// and column must be a permutation of the labels, element `0` must
    /// act as a two-sided identity, and associativity is checked
    /// (exhaustively for orders up to 128, on a large fixed-seed sample
    /// of triples above that).
    pub fn from_text(text: &str, cap: u64) -> Result<TableGroup> {
        let mut tokens = text.split_whitespace();
        let head = tokens
            .next()
            .ok_or_else(|| invalid_table("empty input"))?;
        let n: usize = head
            .parse()
            .map_err(|_| invalid_table(format!("order '{head}' is not a number")))?;
        if n == 0 {
            return Err(invalid_table("order must be at least 1"));
        }
        let effective = cap.min(MAX_TABLE_ORDER as u64);
        if n as u64 > effective {
            return Err(Error::CapExceeded {
                what: "table order",
                value: n as u64,
                cap: effective,
            });
        }
        let mut table = Vec::with_capacity(n * n);
        for index in 0..n * n {
            let token = tokens.next().ok_or_else(|| {
                invalid_table(format!("expected {} entries, found {index}", n * n))
            })?;
            let value: usize = token
                .parse()
                .map_err(|_| invalid_table(format!("entry '{token}' is not a number")))?;
            if value >= n {
                return Err(invalid_table(format!(
                    "entry '{value}' is outside 0..={}",
                    n - 1
                )));
            }
            table.push(value as u16);
        }
        if let Some(extra) = tokens.next() {
            return Err(invalid_table(format!(
                "trailing data '{extra}' after {} entries",
                n * n
            )));
        }
        validate_table(n, &table)?;
        // Right-regular representation: element `i` acts by `j -> j * i`,
        // which is a homomorphism under left-to-right composition.
        let perms = (0..n)
            .map(|i| {
                let images = (0..n).map(|j| table[j * n + i] as u32).collect();
                Permutation::from_images(images)
                    .expect("validated table rows are permutations")
            })
            .collect();
        Ok(Self::finish(n, table, perms))
    }

    fn finish(n: usize, table: Vec<u16>, perms: Vec<Permutation>) -> TableGroup {
        let mut inverses = vec![0u16; n];
        for a in 0..n {
            let b = (0..n)
                .find(|&b| table[a * n + b] == 0)
                .expect("every element of a validated table has an inverse");
            inverses[a] = b as u16;
        }
        let mut orders = vec![0u32; n];
        for a in 0..n {
            let mut order = 1u32;
            let mut current = a as u16;
            while current != 0 {
                current = table[current as usize * n + a];
                order += 1;
            }
            orders[a] = order;
        }
        TableGroup {
            n,
            table,
            inverses,
            orders,
            perms,
        }
    }

    /// Serializes the table in the format accepted by [`from_text`].
    ///
    /// [`from_text`]: TableGroup::from_text
    #[must_use]
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.n.to_string());
        out.push('\n');
        for i in 0..self.n {
            for j in 0..self.n {
                if j > 0 {
                    out.push(' ');
                }
                out.push_str(&self.table[i * self.n + j].to_string());
            }
            out.push('\n');
        }
        out
    }

    #[must_use]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    #[must_use]
    pub fn mul(&self, a: u16, b: u16) -> u16 {
        self.table[a as usize * self.n + b as usize]
    }

    #[inline]
    #[must_use]
    pub fn inverse(&self, a: u16) -> u16 {
        self.inverses[a as usize]
    }

    #[must_use]
    pub fn element_order(&self, a: u16) -> u32 {
        self.orders[a as usize]
    }

    /// The faithful permutation image of element `a`.
    #[must_use]
    pub fn element_perm(&self, a: u16) -> &Permutation {
        &self.perms[a as usize]
    }

    #[must_use]
    pub fn power(&self, a: u16, exponent: u32) -> u16 {
        let mut result = 0u16;
        for _ in 0..exponent % self.orders[a as usize] {
            result = self.mul(result, a);
        }
        result
    }

    /// `z^-1 * x * z`.
    #[inline]
    #[must_use]
    pub fn conjugate(&self, x: u16, z: u16) -> u16 {
        self.mul(self.mul(self.inverse(z), x), z)
    }

    /// `a^-1 * b^-1 * a * b`.
    #[inline]
    #[must_use]
    pub fn commutator(&self, a: u16, b: u16) -> u16 {
        let product = self.mul(self.mul(self.inverse(a), self.inverse(b)), a);
        self.mul(product, b)
    }

    /// Converts a sorted member list back into a permutation group in the
    /// action the table was built from (the original action for
    /// [`from_generated`] tables, the regular action for parsed tables).
    ///
    /// [`from_generated`]: TableGroup::from_generated
    #[must_use]
    pub fn to_generated(&self, members: &[u16]) -> GeneratedGroup {
        let degree = self.perms[0].degree();
        let generators = self
            .greedy_generators(members)
            .into_iter()
            .map(|g| self.perms[g as usize].clone())
            .collect();
        GeneratedGroup::from_generators_unchecked(degree, generators)
    }

    /// A short generating list for the subgroup `members`, chosen greedily
    /// by smallest index so the result is deterministic.
    fn greedy_generators(&self, members: &[u16]) -> Vec<u16> {
        let mut covered = [0u64; MAX_TABLE_ORDER / 64];
        bit_set(&mut covered, 0);
        let mut generators = Vec::new();
        let mut count = 1usize;
        for &m in members {
            if count == members.len() {
                break;
            }
            if bit_get(&covered, m as usize) {
                continue;
            }
            generators.push(m);
            covered = self.closure_bits(&generators);
            count = bit_count(&covered);
        }
        generators
    }

    /// The subgroup generated by `seed`, as a bitset of element indices.
    fn closure_bits(&self, seed: &[u16]) -> Bits {
        let mut bits = [0u64; MAX_TABLE_ORDER / 64];
        bit_set(&mut bits, 0);
        let mut list: Vec<u16> = vec![0];
        for &s in seed {
            if !bit_get(&bits, s as usize) {
                bit_set(&mut bits, s as usize);
                list.push(s);
            }
        }
        let mut i = 0;
        while i < list.len() {
            let x = list[i];
            let mut j = 0;
            while j <= i {
                let y = list[j];
                for product in [self.mul(x, y), self.mul(y, x)] {
                    if !bit_get(&bits, product as usize) {
                        bit_set(&mut bits, product as usize);
                        list.push(product);
                    }
                }
                j += 1;
            }
            i += 1;
        }
        bits
    }

    /// The derived subgroup of the subgroup with the given members.
    #[must_use]
    pub fn derived_members(&self, members: &[u16]) -> Vec<u16> {
        let bits = self.derived_bits(members);
        bits_to_members(&bits, self.n)
    }

    fn derived_bits(&self, members: &[u16]) -> Bits {
        let mut seen = [0u64; MAX_TABLE_ORDER / 64];
        let mut commutators = Vec::new();
        for &a in members {
            for &b in members {
                let c = self.commutator(a, b);
                if !bit_get(&seen, c as usize) {
                    bit_set(&mut seen, c as usize);
                    commutators.push(c);
                }
            }
        }
        self.closure_bits(&commutators)
    }

    /// Whether all listed elements commute pairwise.
    #[must_use]
    pub fn members_commute(&self, members: &[u16]) -> bool {
        members
            .iter()
            .enumerate()
            .all(|(i, &a)| members[..i].iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Whether the subgroup with the given members has nilpotency class
    /// at most two, i.e. its derived subgroup is central in it.
    #[must_use]
    pub fn class_at_most_two(&self, members: &[u16]) -> bool {
        let derived = self.derived_bits(members);
        bits_to_members(&derived, self.n).iter().all(|&d| {
            members
                .iter()
                .all(|&h| self.mul(d, h) == self.mul(h, d))
        })
    }

    /// The nilpotency class of the subgroup with the given members, or
    /// `None` if its lower central series stalls above the identity.
    #[must_use]
    pub fn nilpotency_class_members(&self, members: &[u16]) -> Option<u32> {
        if members.len() == 1 {
            return Some(0);
        }
        let mut current: Vec<u16> = members.to_vec();
        let mut class = 1u32;
        loop {
            let mut seen = [0u64; MAX_TABLE_ORDER / 64];
            let mut commutators = Vec::new();
            for &x in &current {
                for &h in members {
                    // Both orders keep the seed closed under inversion.
                    for c in [self.commutator(x, h), self.commutator(h, x)] {
                        if !bit_get(&seen, c as usize) {
                            bit_set(&mut seen, c as usize);
                            commutators.push(c);
                        }
                    }
                }
            }
            let next_bits = self.closure_bits(&commutators);
            let next = bits_to_members(&next_bits, self.n);
            if next.len() == 1 {
                return Some(class);
            }
            if next.len() == current.len() {
                return None;
            }
            current = next;
            class += 1;
        }
    }

    /// The elements commuting with the whole group.
    #[must_use]
    pub fn center_members(&self) -> Vec<u16> {
        (0..self.n as u16)
            .filter(|&z| (0..self.n as u16).all(|x| self.mul(z, x) == self.mul(x, z)))
            .collect()
    }

    /// Whether the subgroup with the given members is normal in the whole
    /// table group.
    #[must_use]
    pub fn is_normal_subgroup(&self, members: &[u16]) -> bool {
        let mut bits = [0u64; MAX_TABLE_ORDER / 64];
        for &m in members {
            bit_set(&mut bits, m as usize);
        }
        members.iter().all(|&m| {
            (0..self.n as u16).all(|z| bit_get(&bits, self.conjugate(m, z) as usize))
        })
    }

    /// The largest order of an abelian quotient over all subgroups: the
    /// maximum of `|H| / |H'|`, together with every subgroup attaining it
    /// (sorted by order, then lexicographically by member list).
    pub fn max_abelian_section(&self, cap: u64) -> Result<(u64, Vec<Vec<u16>>)> {
        let subgroups = self.enumerate_subgroups(cap)?;
        let mut best = 0u64;
        let mut witnesses = Vec::new();
        for subgroup in subgroups {
            let derived = self.derived_members(&subgroup);
            let section = (subgroup.len() / derived.len()) as u64;
            debug_assert_eq!(subgroup.len() % derived.len(), 0);
            if section > best {
                best = section;
                witnesses.clear();
            }
            if section == best {
                witnesses.push(subgroup);
            }
        }
        Ok((best, witnesses))
    }

    /// Whether the whole table group is solvable.
    #[must_use]
    pub fn is_solvable_group(&self) -> bool {
        let mut current: Vec<u16> = (0..self.n as u16).collect();
        loop {
            let next = self.derived_members(&current);
            if next.len() == 1 {
                return true;
            }
            if next.len() == current.len() {
                return false;
            }
            current = next;
        }
    }

    /// Enumerates every subgroup, returned as sorted member lists, sorted
    /// by (order, members).  Fails with `CapExceeded` when the group is
    /// larger than `cap`.
    ///
    /// Subgroups are grown from below: the trivial subgroup and all cyclic
    /// subgroups seed a worklist, and each known subgroup `H` is extended
    /// by every normalizing element `z` with a prime power `z^p` inside
    /// `H`, giving the index-`p` overgroup `H<z>`.  Walking down a chief
    /// series of any solvable subgroup shows each step has prime index
    /// over a normal subgroup, so induction on order reaches every
    /// solvable subgroup this way.  Non-solvable subgroups are handled by
    /// also seeding every perfect subgroup: each one is the last term of
    /// its overgroup's derived series, and climbing from it with the same
    /// prime steps reaches the rest.  Perfect subgroups here have order at
    /// most 256, so each is trivial or a two-generator group (orders 60,
    /// 120, 168), and closing pairs (class representative, any element)
    /// finds a conjugate of each; conjugating then yields them all.
    pub fn enumerate_subgroups(&self, cap: u64) -> Result<Vec<Vec<u16>>> {
        if self.n as u64 > cap {
            return Err(Error::CapExceeded {
                what: "subgroup enumeration",
                value: self.n as u64,
                cap,
            });
        }
        let mut position: HashMap<Bits, usize> = HashMap::new();
        let mut subgroups: Vec<Bits> = Vec::new();
        let mut generators: Vec<Vec<u16>> = Vec::new();
        let mut push = |bits: Bits,
                        gens: Vec<u16>,
                        subgroups: &mut Vec<Bits>,
                        generators: &mut Vec<Vec<u16>>| {
            if let std::collections::hash_map::Entry::Vacant(entry) =
                position.entry(bits)
            {
                entry.insert(subgroups.len());
                subgroups.push(bits);
                generators.push(gens);
            }
        };

        let mut trivial = [0u64; MAX_TABLE_ORDER / 64];
        bit_set(&mut trivial, 0);
        push(trivial, Vec::new(), &mut subgroups, &mut generators);
        for x in 1..self.n as u16 {
            push(
                self.closure_bits(&[x]),
                vec![x],
                &mut subgroups,
                &mut generators,
            );
        }
        if !self.is_solvable_group() {
            for seed in self.perfect_subgroup_seeds() {
                push(seed.0, seed.1, &mut subgroups, &mut generators);
            }
        }

        let mut i = 0;
        while i < subgroups.len() {
            let bits = subgroups[i];
            let gens = generators[i].clone();
            let members = bits_to_members(&bits, self.n);
            for z in 0..self.n as u16 {
                if bit_get(&bits, z as usize) {
                    continue;
                }
                if !gens
                    .iter()
                    .all(|&g| bit_get(&bits, self.conjugate(g, z) as usize))
                {
                    continue;
                }
                let order = self.element_order(z);
                for p in prime_factors(order) {
                    if !bit_get(&bits, self.power(z, p) as usize) {
                        continue;
                    }
                    // z normalizes H and z^p lies in H, so H<z> is the
                    // union of the p cosets H z^t.
                    let mut extended = bits;
                    let mut zt = z;
                    for _ in 1..p {
                        for &m in &members {
                            bit_set(&mut extended, self.mul(m, zt) as usize);
                        }
                        zt = self.mul(zt, z);
                    }
                    debug_assert_eq!(
                        bit_count(&extended),
                        members.len() * p as usize
                    );
                    let mut extended_gens = gens.clone();
                    extended_gens.push(z);
                    push(extended, extended_gens, &mut subgroups, &mut generators);
                    break;
                }
            }
            i += 1;
        }

        let mut out: Vec<Vec<u16>> = subgroups
            .iter()
            .map(|bits| bits_to_members(bits, self.n))
            .collect();
        out.sort_unstable_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        Ok(out)
    }

    /// Every conjugate of every perfect subgroup generated by a pair
    /// (conjugacy class representative, arbitrary element), with a
    /// two-element generating list for each.
    fn perfect_subgroup_seeds(&self) -> Vec<(Bits, Vec<u16>)> {
        let mut seeds = Vec::new();
        let mut seen: HashSet<Bits> = HashSet::new();
        for a in self.conjugacy_class_reps() {
            if a == 0 {
                continue;
            }
            for b in 0..self.n as u16 {
                let bits = self.closure_bits(&[a, b]);
                if bit_count(&bits) == 1 {
                    continue;
                }
                let members = bits_to_members(&bits, self.n);
                let derived = self.derived_bits(&members);
                if derived != bits {
                    continue;
                }
                for z in 0..self.n as u16 {
                    let ga = self.conjugate(a, z);
                    let gb = self.conjugate(b, z);
                    let conjugated = self.closure_bits(&[ga, gb]);
                    if seen.insert(conjugated) {
                        seeds.push((conjugated, vec![ga, gb]));
                    }
                }
            }
        }
        seeds
    }

    fn conjugacy_class_reps(&self) -> Vec<u16> {
        let mut seen = [0u64; MAX_TABLE_ORDER / 64];
        let mut reps = Vec::new();
        for x in 0..self.n as u16 {
            if bit_get(&seen, x as usize) {
                continue;
            }
            reps.push(x);
            for z in 0..self.n as u16 {
                bit_set(&mut seen, self.conjugate(x, z) as usize);
            }
        }
        reps
    }

    /// Counts automorphisms by backtracking over images of a greedy
    /// minimal generating sequence, propagating each partial assignment
    /// through the table until it either closes into a consistent
    /// injective homomorphism or contradicts itself.  Fails with
    /// `CapExceeded` when the group is larger than `cap`.
    pub fn automorphism_count(&self, cap: u64) -> Result<u64> {
        if self.n as u64 > cap {
            return Err(Error::CapExceeded {
                what: "automorphism counting",
                value: self.n as u64,
                cap,
            });
        }
        let all: Vec<u16> = (0..self.n as u16).collect();
        let sequence = self.greedy_generators(&all);
        let mut state = MapState {
            image: vec![UNMAPPED; self.n],
            used: [0u64; MAX_TABLE_ORDER / 64],
            known: vec![0],
        };
        state.image[0] = 0;
        bit_set(&mut state.used, 0);
        let mut count = 0u64;
        self.count_extensions(&sequence, 0, &state, &mut count);
        Ok(count)
    }

    fn count_extensions(
        &self,
        sequence: &[u16],
        depth: usize,
        state: &MapState,
        count: &mut u64,
    ) {
        if depth == sequence.len() {
            debug_assert_eq!(state.known.len(), self.n);
            *count += 1;
            return;
        }
        let g = sequence[depth];
        for h in 0..self.n as u16 {
            if bit_get(&state.used, h as usize) {
                continue;
            }
            if self.element_order(h) != self.element_order(g) {
                continue;
            }
            let mut next = state.clone();
            if self.propagate(&mut next, g, h) {
                self.count_extensions(sequence, depth + 1, &next, count);
            }
        }
    }

    /// Adds the assignment `g -> h` and closes the partial map under
    /// products.  Returns false on any conflict: a product whose image is
    /// already taken by a different element, or two products forcing
    /// different images for the same element.
    fn propagate(&self, state: &mut MapState, g: u16, h: u16) -> bool {
        if !self.assign(state, g, h) {
            return false;
        }
        let mut frontier = state.known.len() - 1;
        while frontier < state.known.len() {
            let x = state.known[frontier];
            let hx = state.image[x as usize];
            let mut j = 0;
            while j < state.known.len() {
                let y = state.known[j];
                let hy = state.image[y as usize];
                if !self.assign(state, self.mul(x, y), self.mul(hx, hy)) {
                    return false;
                }
                if !self.assign(state, self.mul(y, x), self.mul(hy, hx)) {
                    return false;
                }
                j += 1;
            }
            frontier += 1;
        }
        true
    }

    fn assign(&self, state: &mut MapState, x: u16, hx: u16) -> bool {
        let current = state.image[x as usize];
        if current != UNMAPPED {
            return current == hx;
        }
        if bit_get(&state.used, hx as usize) {
            return false;
        }
        state.image[x as usize] = hx;
        bit_set(&mut state.used, hx as usize);
        state.known.push(x);
        true
    }
}

const UNMAPPED: u16 = u16::MAX;

#[derive(Clone)]
struct MapState {
    image: Vec<u16>,
    used: Bits,
    known: Vec<u16>,
}

fn invalid_table(message: impl Into<String>) -> Error {
    Error::InvalidTable {
        message: message.into(),
    }
}

fn prime_factors(mut m: u32) -> Vec<u32> {
    let mut factors = Vec::new();
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            factors.push(p);
            while m % p == 0 {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        factors.push(m);
    }
    factors
}

fn validate_table(n: usize, table: &[u16]) -> Result<()> {
    let mut seen = vec![false; n];
    for i in 0..n {
        seen.fill(false);
        for j in 0..n {
            let v = table[i * n + j] as usize;
            if seen[v] {
                return Err(invalid_table(format!("row {i} repeats entry {v}")));
            }
            seen[v] = true;
        }
    }
    for j in 0..n {
        seen.fill(false);
        for i in 0..n {
            let v = table[i * n + j] as usize;
            if seen[v] {
                return Err(invalid_table(format!("column {j} repeats entry {v}")));
            }
            seen[v] = true;
        }
    }
    for j in 0..n {
        if table[j] as usize != j || table[j * n] as usize != j {
            return Err(invalid_table("element 0 must act as the identity"));
        }
    }
    let check = |a: usize, b: usize, c: usize| -> Result<()> {
        let ab = table[a * n + b] as usize;
        let bc = table[b * n + c] as usize;
        if table[ab * n + c] != table[a * n + bc] {
            return Err(invalid_table(format!(
                "not associative at ({a}, {b}, {c})"
            )));
        }
        Ok(())
    };
    if n <= EXHAUSTIVE_ASSOC_ORDER {
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    check(a, b, c)?;
                }
            }
        }
    } else {
        let mut seed = SeedState::from_seed(0).derive("table-associativity");
        for _ in 0..SAMPLED_ASSOC_TRIPLES {
            check(
                seed.next_index(n),
                seed.next_index(n),
                seed.next_index(n),
            )?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{parse_family, FamilySpec};
    use crate::group::parse_group_spec;

    fn table_of(family: &str) -> TableGroup {
        let group = parse_family(family)
            .expect("family parses")
            .realize()
            .expect("family realizes");
        TableGroup::from_generated(&group, 512).expect("small enough to tabulate")
    }

    fn subgroup_sizes(table: &TableGroup) -> Vec<usize> {
        table
            .enumerate_subgroups(256)
            .expect("within enumeration cap")
            .iter()
            .map(Vec::len)
            .collect()
    }

    #[test]
    fn sym3_has_six_subgroups() {
        let sizes = subgroup_sizes(&table_of("symmetric(3)"));
        assert_eq!(sizes, vec![1, 2, 2, 2, 3, 6]);
    }

    #[test]
    fn quaternion_has_six_subgroups() {
        let table = table_of("dicyclic(2)");
        let subgroups = table.enumerate_subgroups(256).unwrap();
        let sizes: Vec<usize> = subgroups.iter().map(Vec::len).collect();
        assert_eq!(sizes, vec![1, 2, 4, 4, 4, 8]);
        // Every nontrivial subgroup contains the unique involution.
        let involution = (1..8u16).find(|&x| table.element_order(x) == 2).unwrap();
        for subgroup in subgroups.iter().filter(|s| s.len() > 1) {
            assert!(subgroup.contains(&involution));
        }
    }

    #[test]
    fn klein_four_has_five_subgroups() {
        let sizes = subgroup_sizes(&table_of("elementary_abelian(2,2)"));
        assert_eq!(sizes, vec![1, 2, 2, 2, 4]);
    }

    #[test]
    fn sym4_has_thirty_subgroups() {
        let sizes = subgroup_sizes(&table_of("symmetric(4)"));
        assert_eq!(sizes.len(), 30);
        let count = |k: usize| sizes.iter().filter(|&&s| s == k).count();
        assert_eq!(count(2), 9);
        assert_eq!(count(3), 4);
        assert_eq!(count(4), 7);
        assert_eq!(count(6), 4);
        assert_eq!(count(8), 3);
        assert_eq!(count(12), 1);
        assert_eq!(count(24), 1);
    }

    #[test]
    fn alt5_has_fifty_nine_subgroups() {
        let sizes = subgroup_sizes(&table_of("alternating(5)"));
        assert_eq!(sizes.len(), 59);
        let count = |k: usize| sizes.iter().filter(|&&s| s == k).count();
        assert_eq!(count(1), 1);
        assert_eq!(count(2), 15);
        assert_eq!(count(3), 10);
        assert_eq!(count(4), 5);
        assert_eq!(count(5), 6);
        assert_eq!(count(6), 10);
        assert_eq!(count(10), 6);
        assert_eq!(count(12), 5);
        assert_eq!(count(60), 1);
    }

    #[test]
    fn cyclic_subgroups_match_divisors() {
        let sizes = subgroup_sizes(&table_of("cyclic(12)"));
        assert_eq!(sizes, vec![1, 2, 3, 4, 6, 12]);
    }

    #[test]
    fn enumerated_members_are_closed() {
        let table = table_of("symmetric(4)");
        for subgroup in table.enumerate_subgroups(256).unwrap() {
            let closed = bits_to_members(&table.closure_bits(&subgroup), table.order());
            assert_eq!(closed, subgroup);
        }
    }

    #[test]
    fn derived_chain_of_sym4() {
        let table = table_of("symmetric(4)");
        let whole: Vec<u16> = (0..24).collect();
        let derived = table.derived_members(&whole);
        assert_eq!(derived.len(), 12);
        let second = table.derived_members(&derived);
        assert_eq!(second.len(), 4);
        let third = table.derived_members(&second);
        assert_eq!(third, vec![0]);
    }

    #[test]
    fn class_two_detection() {
        let d8 = table_of("dihedral(4)");
        assert!(d8.class_at_most_two(&(0..8).collect::<Vec<_>>()));
        let q8 = table_of("dicyclic(2)");
        assert!(q8.class_at_most_two(&(0..8).collect::<Vec<_>>()));
        let s4 = table_of("symmetric(4)");
        assert!(!s4.class_at_most_two(&(0..24).collect::<Vec<_>>()));
    }

    #[test]
    fn nilpotency_class_values() {
        let q8 = table_of("dicyclic(2)");
        assert_eq!(q8.nilpotency_class_members(&(0..8).collect::<Vec<_>>()), Some(2));
        assert_eq!(q8.nilpotency_class_members(&[0]), Some(0));
        let c6 = table_of("cyclic(6)");
        assert_eq!(c6.nilpotency_class_members(&(0..6).collect::<Vec<_>>()), Some(1));
        let s3 = table_of("symmetric(3)");
        assert_eq!(s3.nilpotency_class_members(&(0..6).collect::<Vec<_>>()), None);
    }

    #[test]
    fn solvability_of_whole_table() {
        assert!(table_of("symmetric(4)").is_solvable_group());
        assert!(!table_of("alternating(5)").is_solvable_group());
    }

    #[test]
    fn automorphism_counts_of_small_groups() {
        assert_eq!(table_of("elementary_abelian(2,2)").automorphism_count(360).unwrap(), 6);
        assert_eq!(table_of("cyclic(6)").automorphism_count(360).unwrap(), 2);
        assert_eq!(table_of("symmetric(3)").automorphism_count(360).unwrap(), 6);
        assert_eq!(table_of("dicyclic(2)").automorphism_count(360).unwrap(), 24);
        assert_eq!(table_of("alternating(4)").automorphism_count(360).unwrap(), 24);
        assert_eq!(table_of("alternating(5)").automorphism_count(360).unwrap(), 120);
    }

    #[test]
    fn alt6_has_outer_automorphisms_beyond_sym6() {
        // |Aut(Alt(6))| = 1440, strictly larger than |Sym(6)| = 720.
        let aut = table_of("alternating(6)").automorphism_count(360).unwrap();
        assert_eq!(aut, 1440);
        assert_ne!(aut, 720);
    }

    #[test]
    fn automorphism_cap_is_enforced() {
        let err = table_of("alternating(6)").automorphism_count(128).unwrap_err();
        assert!(matches!(err, Error::CapExceeded { .. }));
    }

    #[test]
    fn text_round_trip() {
        let table = table_of("symmetric(3)");
        let text = table.to_text();
        let parsed = TableGroup::from_text(&text, 512).unwrap();
        assert_eq!(parsed.to_text(), text);
        assert_eq!(subgroup_sizes(&parsed), vec![1, 2, 2, 2, 3, 6]);
    }

    #[test]
    fn regular_representation_is_faithful_homomorphism() {
        let table = TableGroup::from_text(&table_of("symmetric(3)").to_text(), 512).unwrap();
        for a in 0..6u16 {
            for b in 0..6u16 {
                let composed = table
                    .element_perm(a)
                    .compose(table.element_perm(b))
                    .unwrap();
                assert_eq!(&composed, table.element_perm(table.mul(a, b)));
            }
        }
        let distinct: std::collections::HashSet<_> =
            (0..6u16).map(|a| table.element_perm(a).clone()).collect();
        assert_eq!(distinct.len(), 6);
    }

    #[test]
    fn parsed_subgroup_converts_to_regular_action() {
        let table = TableGroup::from_text(&table_of("symmetric(3)").to_text(), 512).unwrap();
        let subgroups = table.enumerate_subgroups(256).unwrap();
        let order3 = subgroups.iter().find(|s| s.len() == 3).unwrap();
        let group = table.to_generated(order3);
        assert_eq!(group.order_u64(), Some(3));
        assert_eq!(group.degree(), 6);
    }

    #[test]
    fn generated_subgroup_converts_to_original_action() {
        let s4 = parse_group_spec("perm deg=4 gens=(1,2) (1,2,3,4)").unwrap();
        let table = TableGroup::from_generated(&s4, 512).unwrap();
        let subgroups = table.enumerate_subgroups(256).unwrap();
        let alt = subgroups.iter().find(|s| s.len() == 12).unwrap();
        let group = table.to_generated(alt);
        assert_eq!(group.degree(), 4);
        assert_eq!(group.order_u64(), Some(12));
        assert!(group.is_subgroup_of(&s4));
    }

    #[test]
    fn rejects_wrong_entry_count() {
        let err = TableGroup::from_text("2\n0 1 1", 512).unwrap_err();
        assert!(matches!(err, Error::InvalidTable { .. }));
        let err = TableGroup::from_text("2\n0 1 1 0 0", 512).unwrap_err();
        assert!(matches!(err, Error::InvalidTable { .. }));
    }

    #[test]
    fn rejects_out_of_range_entry() {
        let err = TableGroup::from_text("2\n0 1 1 2", 512).unwrap_err();
        assert!(matches!(err, Error::InvalidTable { .. }));
    }

    #[test]
    fn rejects_repeated_row_entry() {
        let err = TableGroup::from_text("2\n0 0 1 1", 512).unwrap_err();
        let message = err.to_string();
        assert!(message.contains("row"), "unexpected message: {message}");
    }

    #[test]
    fn rejects_missing_identity() {
        // Subtraction modulo 3 is a quasigroup whose first row is not the
        // identity row.
        let err = TableGroup::from_text("3\n0 2 1\n1 0 2\n2 1 0", 512).unwrap_err();
        let message = err.to_string();
        assert!(message.contains("identity"), "unexpected message: {message}");
    }

    #[test]
    fn rejects_non_associative_loop() {
        // A Latin square with two-sided identity that is not a group: it
        // has an element of order 2, impossible in a group of order 5.
        let text = "5\n0 1 2 3 4\n1 0 3 4 2\n2 3 4 0 1\n3 4 1 2 0\n4 2 0 1 3";
        let err = TableGroup::from_text(text, 512).unwrap_err();
        let message = err.to_string();
        assert!(message.contains("associative"), "unexpected message: {message}");
    }

    #[test]
    fn max_abelian_section_of_sym4() {
        let table = table_of("symmetric(4)");
        let (value, witnesses) = table.max_abelian_section(256).unwrap();
        assert_eq!(value, 4);
        // Attained by the 3 cyclic and 4 Klein subgroups of order 4 and
        // the 3 order-8 dihedral subgroups; never by Sym(4) itself.
        assert_eq!(witnesses.len(), 10);
        assert!(witnesses.iter().all(|w| w.len() == 4 || w.len() == 8));
        assert_eq!(witnesses.iter().filter(|w| w.len() == 4).count(), 7);
        assert_eq!(witnesses[0].len(), 4);
    }

    #[test]
    fn max_abelian_section_of_quaternion() {
        let table = table_of("dicyclic(2)");
        let (value, witnesses) = table.max_abelian_section(256).unwrap();
        assert_eq!(value, 4);
        let sizes: Vec<usize> = witnesses.iter().map(Vec::len).collect();
        assert_eq!(sizes, vec![4, 4, 4, 8]);
    }

    #[test]
    fn max_abelian_section_of_abelian_group_is_whole() {
        let table = table_of("cyclic(6)");
        let (value, witnesses) = table.max_abelian_section(256).unwrap();
        assert_eq!(value, 6);
        assert_eq!(witnesses, vec![(0..6u16).collect::<Vec<_>>()]);
    }

    #[test]
    fn max_abelian_section_of_extraspecial_32() {
        let table = table_of("extraspecial(2,5)");
        let (value, witnesses) = table.max_abelian_section(256).unwrap();
        assert_eq!(value, 16);
        assert_eq!(witnesses.len(), 1);
        assert_eq!(witnesses[0].len(), 32);
        assert_eq!(table.nilpotency_class_members(&witnesses[0]), Some(2));
    }

    #[test]
    fn center_members_of_small_groups() {
        assert_eq!(table_of("dicyclic(2)").center_members().len(), 2);
        assert_eq!(table_of("symmetric(4)").center_members(), vec![0]);
        assert_eq!(table_of("cyclic(6)").center_members().len(), 6);
    }

    #[test]
    fn normality_of_subgroups() {
        let table = table_of("symmetric(4)");
        let subgroups = table.enumerate_subgroups(256).unwrap();
        let normal_counts = subgroups
            .iter()
            .filter(|s| table.is_normal_subgroup(s))
            .map(Vec::len)
            .collect::<Vec<_>>();
        // 1, V4, Alt(4), Sym(4).
        assert_eq!(normal_counts, vec![1, 4, 12, 24]);
    }

    #[test]
    fn large_table_uses_sampled_validation() {
        let table = table_of("cyclic(150)");
        let parsed = TableGroup::from_text(&table.to_text(), 512).unwrap();
        assert_eq!(parsed.order(), 150);
        let generator = (1..150u16)
            .find(|&x| parsed.element_order(x) == 150)
            .unwrap();
        assert_eq!(parsed.element_order(generator), 150);
    }

    #[test]
    fn table_cap_is_enforced() {
        let group = FamilySpec::Symmetric(6).realize().unwrap();
        let err = TableGroup::from_generated(&group, 512).unwrap_err();
        assert!(matches!(err, Error::CapExceeded { .. }));
        let err = TableGroup::from_generated(&group, 100_000).unwrap_err();
        assert!(matches!(err, Error::CapExceeded { .. }));
    }

    #[test]
    fn trivial_table() {
        let group = parse_group_spec("perm deg=3 gens=()").unwrap();
        let table = TableGroup::from_generated(&group, 512).unwrap();
        assert_eq!(table.order(), 1);
        assert_eq!(table.enumerate_subgroups(256).unwrap(), vec![vec![0]]);
        assert_eq!(table.automorphism_count(360).unwrap(), 1);
        assert_eq!(table.to_text(), "1\n0\n");
    }

    #[test]
    fn element_arithmetic() {
        let table = table_of("dicyclic(2)");
        for a in 0..8u16 {
            assert_eq!(table.mul(a, table.inverse(a)), 0);
            assert_eq!(table.power(a, table.element_order(a)), 0);
            for z in 0..8u16 {
                assert_eq!(
                    table.element_order(table.conjugate(a, z)),
                    table.element_order(a)
                );
            }
        }
    }
}
