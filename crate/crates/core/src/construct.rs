//! Group family constructors, a recursive family-spec grammar, and the
//! built-in corpus of named test groups.
//!
//! Family specs are written `name(args)`, e.g. `dihedral(7)`,
//! `direct_product(symmetric(4), alternating(5))`, `wreath(cyclic(2), 3)`.
//! Names accept `-` and `_` interchangeably; `dixon(k)` abbreviates
//! `dixon_tower(k)`.

use std::fmt;

use crate::arith::is_prime;
use crate::error::{Error, Result};
use crate::group::GeneratedGroup;
use crate::perm::Permutation;

/// Version stamp for the built-in corpus; bump when entries change.
pub const CORPUS_VERSION: u32 = 1;

/// Overall degree guard for realized families.
const MAX_FAMILY_DEGREE: u64 = 10_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilySpec {
    /// Cyclic group of order `n`, on `n` points.
    Cyclic(u32),
    /// Dihedral group of order `2n` (symmetries of the `n`-gon), `n >= 3`.
    Dihedral(u32),
    /// Dicyclic group of order `4n`, `n >= 2`; `dicyclic(2)` is the
    /// quaternion group.
    Dicyclic(u32),
    Symmetric(u32),
    Alternating(u32),
    /// `(C_p)^k` on `p * k` points.
    ElementaryAbelian(u64, u32),
    /// Extraspecial group of order `p^n`, `n` odd; for `p = 2` the plus
    /// type (central product of dihedral groups of order 8).
    Extraspecial(u64, u32),
    DirectProduct(Box<FamilySpec>, Box<FamilySpec>),
    /// `A wr Sym(k)`: `k` coordinate copies of `A` permuted by the full
    /// symmetric group on the copies.
    Wreath(Box<FamilySpec>, u32),
    /// Iterated wreath tower: level 1 is `symmetric(4)`, level `k+1` is
    /// `wreath(level k, 4)`.
    DixonTower(u32),
    /// `SL(2,3)` acting on the eight nonzero vectors of `F_3^2`.
    Sl23,
    /// `PSL(3,4)` acting on the 21 points of the projective plane over
    /// `F_4`. Same order as the alternating group on 8 letters but not
    /// isomorphic to it.
    Psl34,
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Cyclic(n) => write!(f, "cyclic({n})"),
            FamilySpec::Dihedral(n) => write!(f, "dihedral({n})"),
            FamilySpec::Dicyclic(n) => write!(f, "dicyclic({n})"),
            FamilySpec::Symmetric(n) => write!(f, "symmetric({n})"),
            FamilySpec::Alternating(n) => write!(f, "alternating({n})"),
            FamilySpec::ElementaryAbelian(p, k) => write!(f, "elementary_abelian({p},{k})"),
            FamilySpec::Extraspecial(p, n) => write!(f, "extraspecial({p},{n})"),
            FamilySpec::DirectProduct(a, b) => write!(f, "direct_product({a},{b})"),
            FamilySpec::Wreath(a, k) => write!(f, "wreath({a},{k})"),
            FamilySpec::DixonTower(k) => write!(f, "dixon_tower({k})"),
            FamilySpec::Sl23 => write!(f, "sl_2_3"),
            FamilySpec::Psl34 => write!(f, "psl_3_4"),
        }
    }
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

struct Scanner<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Scanner<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.text.len() && self.text.as_bytes()[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.text.as_bytes().get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let b = self.peek()?;
        self.pos += 1;
        Some(b)
    }

    fn err(&self, message: &str) -> Error {
        Error::InvalidFamily {
            message: format!("{message} (at byte {} of {:?})", self.pos, self.text),
        }
    }

    fn ident(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        while self
            .text
            .as_bytes()
            .get(self.pos)
            .is_some_and(|b| b.is_ascii_alphanumeric() || *b == b'_' || *b == b'-')
        {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a family name"));
        }
        Ok(self.text[start..self.pos].replace('-', "_"))
    }
}

enum Arg {
    Int(u64),
    Spec(FamilySpec),
}

impl Arg {
    fn int(self, scanner: &Scanner<'_>) -> Result<u64> {
        match self {
            Arg::Int(n) => Ok(n),
            Arg::Spec(_) => Err(scanner.err("expected an integer argument")),
        }
    }

    fn spec(self, scanner: &Scanner<'_>) -> Result<FamilySpec> {
        match self {
            Arg::Spec(s) => Ok(s),
            Arg::Int(_) => Err(scanner.err("expected a nested family argument")),
        }
    }
}

/// Parses a family spec; the whole input must be consumed.
pub fn parse_family(text: &str) -> Result<FamilySpec> {
    let mut scanner = Scanner { text, pos: 0 };
    let spec = parse_spec(&mut scanner)?;
    scanner.skip_ws();
    if scanner.pos != text.len() {
        return Err(scanner.err("trailing input after family spec"));
    }
    Ok(spec)
}

fn parse_spec(s: &mut Scanner<'_>) -> Result<FamilySpec> {
    let name = s.ident()?;
    let mut args: Vec<Arg> = Vec::new();
    if s.peek() == Some(b'(') {
        s.bump();
        if s.peek() == Some(b')') {
            s.bump();
        } else {
            loop {
                let arg = match s.peek() {
                    Some(b) if b.is_ascii_digit() => {
                        let word = s.ident()?;
                        let n = word
                            .parse::<u64>()
                            .map_err(|_| s.err("malformed integer argument"))?;
                        Arg::Int(n)
                    }
                    _ => Arg::Spec(parse_spec(s)?),
                };
                args.push(arg);
                match s.bump() {
                    Some(b',') => continue,
                    Some(b')') => break,
                    _ => return Err(s.err("expected ',' or ')' in argument list")),
                }
            }
        }
    }

    let mut args = args.into_iter();
    let mut next_arg =
        |s: &Scanner<'_>| -> Result<Arg> { args.next().ok_or_else(|| s.err("missing argument")) };

    macro_rules! finish {
        ($s:expr, $args:expr, $value:expr) => {{
            if $args.next().is_some() {
                return Err($s.err(&format!("too many arguments for '{name}'")));
            }
            $value
        }};
    }

    let ranged = |s: &Scanner<'_>, n: u64, lo: u64, hi: u64, what: &str| -> Result<u32> {
        if n < lo || n > hi {
            return Err(s.err(&format!("{what} must be in {lo}..={hi}, got {n}")));
        }
        Ok(n as u32)
    };

    let spec = match name.as_str() {
        "cyclic" => {
            let n = next_arg(s)?.int(s)?;
            FamilySpec::Cyclic(ranged(s, n, 1, MAX_FAMILY_DEGREE, "cyclic order")?)
        }
        "dihedral" => {
            let n = next_arg(s)?.int(s)?;
            FamilySpec::Dihedral(ranged(s, n, 3, MAX_FAMILY_DEGREE / 2, "dihedral parameter")?)
        }
        "dicyclic" => {
            let n = next_arg(s)?.int(s)?;
            FamilySpec::Dicyclic(ranged(s, n, 2, MAX_FAMILY_DEGREE / 4, "dicyclic parameter")?)
        }
        "symmetric" => {
            let n = next_arg(s)?.int(s)?;
            FamilySpec::Symmetric(ranged(s, n, 1, 20, "symmetric degree")?)
        }
        "alternating" => {
            let n = next_arg(s)?.int(s)?;
            FamilySpec::Alternating(ranged(s, n, 3, 20, "alternating degree")?)
        }
        "elementary_abelian" => {
            let p = next_arg(s)?.int(s)?;
            let k = next_arg(s)?.int(s)?;
            if !is_prime(p) {
                return Err(s.err(&format!("elementary_abelian base {p} is not prime")));
            }
            FamilySpec::ElementaryAbelian(p, ranged(s, k, 1, 16, "elementary_abelian rank")?)
        }
        "extraspecial" => {
            let p = next_arg(s)?.int(s)?;
            let n = next_arg(s)?.int(s)?;
            if !is_prime(p) {
                return Err(s.err(&format!("extraspecial base {p} is not prime")));
            }
            if n < 3 || n % 2 == 0 {
                return Err(s.err("extraspecial exponent must be odd and at least 3"));
            }
            if p.checked_pow(n as u32).is_none_or(|o| o > MAX_FAMILY_DEGREE) {
                return Err(s.err("extraspecial order exceeds the degree guard"));
            }
            FamilySpec::Extraspecial(p, n as u32)
        }
        "direct_product" => {
            let a = next_arg(s)?.spec(s)?;
            let b = next_arg(s)?.spec(s)?;
            FamilySpec::DirectProduct(Box::new(a), Box::new(b))
        }
        "wreath" => {
            let a = next_arg(s)?.spec(s)?;
            let k = next_arg(s)?.int(s)?;
            FamilySpec::Wreath(Box::new(a), ranged(s, k, 1, 8, "wreath copy count")?)
        }
        "dixon_tower" | "dixon" => {
            let k = next_arg(s)?.int(s)?;
            FamilySpec::DixonTower(ranged(s, k, 1, 4, "tower height")?)
        }
        "sl_2_3" => FamilySpec::Sl23,
        "psl_3_4" => FamilySpec::Psl34,
        _ => return Err(s.err(&format!("unknown family '{name}'"))),
    };
    Ok(finish!(s, args, spec))
}

// ---------------------------------------------------------------------------
// Realization
// ---------------------------------------------------------------------------

impl FamilySpec {
    /// Number of points the realized permutation group acts on.
    #[must_use]
    pub fn degree(&self) -> u64 {
        match self {
            FamilySpec::Cyclic(n) => u64::from(*n),
            FamilySpec::Dihedral(n) => u64::from(*n),
            FamilySpec::Dicyclic(n) => 4 * u64::from(*n),
            FamilySpec::Symmetric(n) | FamilySpec::Alternating(n) => u64::from(*n),
            FamilySpec::ElementaryAbelian(p, k) => p * u64::from(*k),
            FamilySpec::Extraspecial(p, n) => p.pow(*n),
            FamilySpec::DirectProduct(a, b) => a.degree() + b.degree(),
            FamilySpec::Wreath(a, k) => a.degree() * u64::from(*k),
            FamilySpec::DixonTower(k) => 4u64.pow(*k),
            FamilySpec::Sl23 => 8,
            FamilySpec::Psl34 => 21,
        }
    }

    /// Builds the group. Degrees above the guard are refused.
    pub fn realize(&self) -> Result<GeneratedGroup> {
        if self.degree() > MAX_FAMILY_DEGREE {
            return Err(Error::InvalidFamily {
                message: format!("family {self} acts on more than {MAX_FAMILY_DEGREE} points"),
            });
        }
        let gens = self.generators()?;
        Ok(GeneratedGroup::from_generators_unchecked(
            self.degree() as usize,
            gens,
        ))
    }

    fn generators(&self) -> Result<Vec<Permutation>> {
        match self {
            FamilySpec::Cyclic(n) => Ok(vec![cycle_perm(*n as usize)]),
            FamilySpec::Dihedral(n) => {
                let n = *n as usize;
                let reflection: Vec<u32> = (0..n).map(|i| ((n - i) % n) as u32).collect();
                Ok(vec![
                    cycle_perm(n),
                    Permutation::from_images(reflection).expect("valid reflection"),
                ])
            }
            FamilySpec::Dicyclic(n) => Ok(dicyclic_generators(*n as usize)),
            FamilySpec::Symmetric(n) => Ok(symmetric_generators(*n as usize)),
            FamilySpec::Alternating(n) => Ok(alternating_generators(*n as usize)),
            FamilySpec::ElementaryAbelian(p, k) => {
                let p = *p as usize;
                let k = *k as usize;
                let degree = p * k;
                let mut gens = Vec::with_capacity(k);
                for block in 0..k {
                    let mut images: Vec<u32> = (0..degree as u32).collect();
                    for i in 0..p {
                        images[block * p + i] = (block * p + (i + 1) % p) as u32;
                    }
                    gens.push(Permutation::from_images(images).expect("valid p-cycle"));
                }
                Ok(gens)
            }
            FamilySpec::Extraspecial(p, n) => Ok(extraspecial_generators(*p, *n)),
            FamilySpec::DirectProduct(a, b) => {
                let left = a.realize()?;
                let right = b.realize()?;
                let total = left.degree() + right.degree();
                let mut gens = Vec::new();
                for g in left.generators() {
                    gens.push(embed(g, 0, total));
                }
                for g in right.generators() {
                    gens.push(embed(g, left.degree(), total));
                }
                Ok(gens)
            }
            FamilySpec::Wreath(a, k) => {
                let base = a.realize()?;
                Ok(wreath_generators(&base, *k as usize))
            }
            FamilySpec::DixonTower(k) => {
                let mut spec = FamilySpec::Symmetric(4);
                for _ in 1..*k {
                    spec = FamilySpec::Wreath(Box::new(spec), 4);
                }
                spec.generators()
            }
            FamilySpec::Sl23 => Ok(sl23_generators()),
            FamilySpec::Psl34 => Ok(psl34_generators()),
        }
    }
}

/// The full cycle `(1,2,...,n)` on `n` points.
fn cycle_perm(n: usize) -> Permutation {
    let images: Vec<u32> = (0..n).map(|i| ((i + 1) % n) as u32).collect();
    Permutation::from_images(images).expect("valid cycle")
}

/// Right-regular action of the dicyclic group of order `4n`: elements are
/// `a^i b^j` with `i` mod `2n`, `j` in `{0,1}`, encoded as point `j*2n + i`.
/// Relations realized: `a` has order `2n`, `b^2 = a^n`, `b^-1 a b = a^-1`.
fn dicyclic_generators(n: usize) -> Vec<Permutation> {
    let m = 2 * n;
    let mut a = vec![0u32; 2 * m];
    let mut b = vec![0u32; 2 * m];
    for i in 0..m {
        // (a^i) * a = a^(i+1); (a^i b) * a = a^(i-1) b.
        a[i] = ((i + 1) % m) as u32;
        a[m + i] = (m + (i + m - 1) % m) as u32;
        // (a^i) * b = a^i b; (a^i b) * b = a^(i+n).
        b[i] = (m + i) as u32;
        b[m + i] = ((i + n) % m) as u32;
    }
    vec![
        Permutation::from_images(a).expect("valid action"),
        Permutation::from_images(b).expect("valid action"),
    ]
}

fn symmetric_generators(n: usize) -> Vec<Permutation> {
    match n {
        1 => vec![Permutation::identity(1)],
        2 => vec![Permutation::from_images(vec![1, 0]).expect("valid swap")],
        _ => {
            let swap: Vec<u32> = (0..n)
                .map(|i| match i {
                    0 => 1,
                    1 => 0,
                    other => other as u32,
                })
                .collect();
            vec![
                Permutation::from_images(swap).expect("valid swap"),
                cycle_perm(n),
            ]
        }
    }
}

fn alternating_generators(n: usize) -> Vec<Permutation> {
    let three_cycle = |n: usize| {
        let images: Vec<u32> = (0..n)
            .map(|i| match i {
                0 => 1,
                1 => 2,
                2 => 0,
                other => other as u32,
            })
            .collect();
        Permutation::from_images(images).expect("valid 3-cycle")
    };
    if n == 3 {
        return vec![three_cycle(3)];
    }
    let second = if n % 2 == 1 {
        cycle_perm(n)
    } else {
        // (1,2)(3,4,...,n): even permutation moving everything.
        let images: Vec<u32> = (0..n)
            .map(|i| match i {
                0 => 1,
                1 => 0,
                i if i == n - 1 => 2,
                other => (other + 1) as u32,
            })
            .collect();
        Permutation::from_images(images).expect("valid generator")
    };
    vec![three_cycle(n), second]
}

/// Extraspecial group of order `p^(2m+1)` in its right-regular action.
/// Elements are pairs `(v, a)` with `v` in `F_p^(2m)`, `a` in `F_p`, and
/// `(v,a)(w,b) = (v+w, a+b+beta(v,w))` where `beta(v,w) = sum v_{2i} w_{2i+1}`.
/// The generators are the standard basis vectors `(e_t, 0)`.
fn extraspecial_generators(p: u64, n: u32) -> Vec<Permutation> {
    let p = p as usize;
    let dim = (n - 1) as usize; // 2m coordinates
    let order = p.pow(n);
    // encode (v, a) with v lexicographically major.
    let encode = |v: &[usize], a: usize| -> usize {
        let mut idx = 0usize;
        for &c in v {
            idx = idx * p + c;
        }
        idx * p + a
    };
    let mut gens = Vec::with_capacity(dim);
    for t in 0..dim {
        let mut images = vec![0u32; order];
        let mut v = vec![0usize; dim];
        for code in 0..order {
            // decode
            let mut rest = code;
            let a = rest % p;
            rest /= p;
            for slot in (0..dim).rev() {
                v[slot] = rest % p;
                rest /= p;
            }
            // multiply by (e_t, 0) on the right
            let beta = if t % 2 == 1 { v[t - 1] } else { 0 };
            v[t] = (v[t] + 1) % p;
            let target = encode(&v, (a + beta) % p);
            v[t] = (v[t] + p - 1) % p;
            images[code] = target as u32;
        }
        gens.push(Permutation::from_images(images).expect("valid action"));
    }
    gens
}

/// Re-labels `g` to act on `total` points, shifted to start at `offset`.
fn embed(g: &Permutation, offset: usize, total: usize) -> Permutation {
    let mut images: Vec<u32> = (0..total as u32).collect();
    for i in 0..g.degree() {
        images[offset + i] = offset as u32 + g.image(i as u32);
    }
    Permutation::from_images(images).expect("valid embedding")
}

/// `base wr Sym(k)` on `k * base.degree()` points: the base group on the
/// first block plus block permutations generating the top symmetric group.
fn wreath_generators(base: &GeneratedGroup, k: usize) -> Vec<Permutation> {
    let d = base.degree();
    let total = d * k;
    let mut gens = Vec::new();
    for g in base.generators() {
        gens.push(embed(g, 0, total));
    }
    if k >= 2 {
        // block swap (1 2)
        let mut swap: Vec<u32> = (0..total as u32).collect();
        for t in 0..d {
            swap[t] = (d + t) as u32;
            swap[d + t] = t as u32;
        }
        gens.push(Permutation::from_images(swap).expect("valid block swap"));
    }
    if k >= 3 {
        // block cycle (1 2 ... k)
        let mut cyc = vec![0u32; total];
        for block in 0..k {
            for t in 0..d {
                cyc[block * d + t] = (((block + 1) % k) * d + t) as u32;
            }
        }
        gens.push(Permutation::from_images(cyc).expect("valid block cycle"));
    }
    gens
}

/// `SL(2,3)` on the eight nonzero column vectors of `F_3^2`, generated by
/// `S = [[0,2],[1,0]]` and `T = [[1,1],[0,1]]`.
fn sl23_generators() -> Vec<Permutation> {
    let vectors: Vec<(usize, usize)> = (0..3)
        .flat_map(|x| (0..3).map(move |y| (x, y)))
        .filter(|&(x, y)| x != 0 || y != 0)
        .collect();
    let index = |x: usize, y: usize| -> u32 {
        vectors
            .iter()
            .position(|&(a, b)| a == x && b == y)
            .expect("nonzero vector") as u32
    };
    let build = |f: &dyn Fn(usize, usize) -> (usize, usize)| -> Permutation {
        let images: Vec<u32> = vectors
            .iter()
            .map(|&(x, y)| {
                let (nx, ny) = f(x, y);
                index(nx, ny)
            })
            .collect();
        Permutation::from_images(images).expect("valid matrix action")
    };
    vec![
        build(&|x, y| ((2 * y) % 3, x)),
        build(&|x, y| ((x + y) % 3, y)),
    ]
}

/// `PSL(3,4)` on the 21 points of the projective plane over `F_4`.
/// `F_4 = {0, 1, w, w^2}` encoded as `{0, 1, 2, 3}` with xor addition.
fn psl34_generators() -> Vec<Permutation> {
    const MUL: [[u8; 4]; 4] = [[0, 0, 0, 0], [0, 1, 2, 3], [0, 2, 3, 1], [0, 3, 1, 2]];
    const INV: [u8; 4] = [0, 1, 3, 2];

    // Canonical representative: scale so the first nonzero coordinate is 1.
    let normalize = |v: [u8; 3]| -> [u8; 3] {
        let lead = v.into_iter().find(|&c| c != 0).expect("nonzero vector");
        let s = INV[lead as usize] as usize;
        [
            MUL[s][v[0] as usize],
            MUL[s][v[1] as usize],
            MUL[s][v[2] as usize],
        ]
    };
    let mut points: Vec<[u8; 3]> = Vec::new();
    for x in 0..4u8 {
        for y in 0..4u8 {
            for z in 0..4u8 {
                if (x, y, z) == (0, 0, 0) {
                    continue;
                }
                let c = normalize([x, y, z]);
                if !points.contains(&c) {
                    points.push(c);
                }
            }
        }
    }
    debug_assert_eq!(points.len(), 21);
    let index = |v: [u8; 3]| -> u32 {
        points
            .iter()
            .position(|&c| c == v)
            .expect("canonical point") as u32
    };
    let build = |f: &dyn Fn([u8; 3]) -> [u8; 3]| -> Permutation {
        let images: Vec<u32> = points.iter().map(|&v| index(normalize(f(v)))).collect();
        Permutation::from_images(images).expect("valid projective action")
    };
    // Transvections x += c*y for c = 1, w, and the coordinate 3-cycle.
    vec![
        build(&|v| [v[0] ^ v[1], v[1], v[2]]),
        build(&|v| [v[0] ^ MUL[2][v[1] as usize], v[1], v[2]]),
        build(&|v| [v[2], v[0], v[1]]),
    ]
}

/// Elementary abelian subgroup of disjoint 3-cycles inside the alternating
/// group on `a` points: rank `floor(a/3)`. Used as an independent witness
/// for lower bounds on elementary abelian 3-subgroups.
pub fn disjoint_three_cycles(a: u32) -> Result<GeneratedGroup> {
    if a < 3 {
        return Err(Error::InvalidFamily {
            message: format!("need at least 3 points for a 3-cycle, got {a}"),
        });
    }
    let a = a as usize;
    let mut gens = Vec::new();
    for block in 0..a / 3 {
        let mut images: Vec<u32> = (0..a as u32).collect();
        for i in 0..3 {
            images[block * 3 + i] = (block * 3 + (i + 1) % 3) as u32;
        }
        gens.push(Permutation::from_images(images).expect("valid 3-cycle"));
    }
    Ok(GeneratedGroup::from_generators_unchecked(a, gens))
}

// ---------------------------------------------------------------------------
// Built-in corpus
// ---------------------------------------------------------------------------

/// The named built-in corpus: stable names mapped to family specs. The list
/// and order are stable under [`CORPUS_VERSION`].
#[must_use]
pub fn builtin_corpus() -> Vec<(String, FamilySpec)> {
    let mut entries: Vec<(String, FamilySpec)> = Vec::new();
    for n in 1..=64 {
        entries.push((format!("cyclic_{n}"), FamilySpec::Cyclic(n)));
    }
    for n in 3..=32 {
        entries.push((format!("dihedral_{n}"), FamilySpec::Dihedral(n)));
    }
    for n in 2..=16 {
        entries.push((format!("dicyclic_{n}"), FamilySpec::Dicyclic(n)));
    }
    for p in [2u64, 3, 5] {
        for k in 2..=4 {
            entries.push((
                format!("elem_ab_{p}_{k}"),
                FamilySpec::ElementaryAbelian(p, k),
            ));
        }
    }
    entries.push(("extraspecial_2_5".into(), FamilySpec::Extraspecial(2, 5)));
    entries.push(("extraspecial_2_7".into(), FamilySpec::Extraspecial(2, 7)));
    entries.push(("extraspecial_3_3".into(), FamilySpec::Extraspecial(3, 3)));
    for n in 3..=8 {
        entries.push((format!("sym_{n}"), FamilySpec::Symmetric(n)));
    }
    for n in 4..=8 {
        entries.push((format!("alt_{n}"), FamilySpec::Alternating(n)));
    }
    entries.push(("sl_2_3".into(), FamilySpec::Sl23));
    let product = |a: FamilySpec, b: FamilySpec| {
        FamilySpec::DirectProduct(Box::new(a), Box::new(b))
    };
    entries.push((
        "sym4_x_alt5".into(),
        product(FamilySpec::Symmetric(4), FamilySpec::Alternating(5)),
    ));
    entries.push((
        "alt5_x_alt5".into(),
        product(FamilySpec::Alternating(5), FamilySpec::Alternating(5)),
    ));
    entries.push((
        "sym3_x_d8".into(),
        product(FamilySpec::Symmetric(3), FamilySpec::Dihedral(4)),
    ));
    entries.push((
        "sym4_x_sym4".into(),
        product(FamilySpec::Symmetric(4), FamilySpec::Symmetric(4)),
    ));
    entries.push((
        "c2_x_alt5".into(),
        product(FamilySpec::Cyclic(2), FamilySpec::Alternating(5)),
    ));
    entries.push((
        "q8_x_c3".into(),
        product(FamilySpec::Dicyclic(2), FamilySpec::Cyclic(3)),
    ));
    let wreath = |a: FamilySpec, k: u32| FamilySpec::Wreath(Box::new(a), k);
    entries.push(("wreath_c2_2".into(), wreath(FamilySpec::Cyclic(2), 2)));
    entries.push(("wreath_c2_3".into(), wreath(FamilySpec::Cyclic(2), 3)));
    entries.push(("wreath_c3_2".into(), wreath(FamilySpec::Cyclic(3), 2)));
    entries.push(("wreath_s3_2".into(), wreath(FamilySpec::Symmetric(3), 2)));
    entries.push(("wreath_s4_2".into(), wreath(FamilySpec::Symmetric(4), 2)));
    entries.push(("wreath_a4_2".into(), wreath(FamilySpec::Alternating(4), 2)));
    entries.push(("dixon_tower_1".into(), FamilySpec::DixonTower(1)));
    entries.push(("dixon_tower_2".into(), FamilySpec::DixonTower(2)));
    entries
}
