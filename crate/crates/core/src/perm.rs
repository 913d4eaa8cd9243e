//! Permutations of line indices, group closure, Schreier orbit-stabilizer
//! chains, and the semilinear surface automorphisms that induce them.

use std::collections::{HashMap, HashSet};
use std::io::{BufRead, Write};

use thiserror::Error;

use crate::field::{Elem, FieldSpec};
use crate::geometry::{LineTable, ProjLine, ProjPoint};
use crate::graph::{SkewGraph, VertexSet};
use crate::linalg;

#[derive(Debug, Error)]
pub enum PermError {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("images do not form a bijection")]
    NotBijection,
    #[error("map is not an automorphism of the line set (line {line} maps off the table)")]
    NotAnAutomorphism { line: usize },
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("no non-monomial unitary block exists for this field")]
    NotFound,
    #[error("closure exceeded cap of {0} elements")]
    ClosureCapExceeded(usize),
    #[error("base vertices are not a skew triple")]
    NotSkewTriple,
    #[error("malformed permutation file: {0}")]
    BadPermFile(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

/// Bijection on 0..n-1, stored as its image array.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<u16>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n as u16).collect() }
    }

    pub fn from_images(images: Vec<u16>) -> Result<Self, PermError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &img in &images {
            if img as usize >= n || seen[img as usize] {
                return Err(PermError::NotBijection);
            }
            seen[img as usize] = true;
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u16] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, v: u16) -> u16 {
        self.images[v as usize]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u16 == x)
    }

    /// compose(a, b)(x) = a(b(x)).
    pub fn compose(&self, other: &Permutation) -> Result<Permutation, PermError> {
        if self.degree() != other.degree() {
            return Err(PermError::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(Permutation {
            images: other.images.iter().map(|&x| self.images[x as usize]).collect(),
        })
    }

    pub fn invert(&self) -> Permutation {
        let mut inv = vec![0u16; self.degree()];
        for (i, &img) in self.images.iter().enumerate() {
            inv[img as usize] = i as u16;
        }
        Permutation { images: inv }
    }

    pub fn apply_to_set(&self, set: &VertexSet) -> Result<VertexSet, PermError> {
        if set.capacity() != self.degree() {
            return Err(PermError::DegreeMismatch(set.capacity(), self.degree()));
        }
        let mut out = VertexSet::empty(set.capacity());
        for v in set.iter() {
            out.insert(self.images[v] as usize);
        }
        Ok(out)
    }

    /// Image of a vertex list, sorted.
    pub fn apply_to_sorted(&self, vs: &[u16]) -> Vec<u16> {
        let mut out: Vec<u16> = vs.iter().map(|&v| self.images[v as usize]).collect();
        out.sort_unstable();
        out
    }

    /// True iff u ~ v exactly when phi(u) ~ phi(v) for all pairs.
    pub fn preserves_adjacency(&self, g: &SkewGraph) -> bool {
        if g.n() != self.degree() {
            return false;
        }
        for u in 0..g.n() {
            let mapped = self
                .apply_to_set(g.neighbors(u))
                .expect("degree checked above");
            if &mapped != g.neighbors(self.images[u] as usize) {
                return false;
            }
        }
        true
    }
}

/// Explicit list of same-degree permutations stored in one flat arena.
/// This is the representation used for stabilizer element lists, where the
/// orbit algorithm scans every element.
#[derive(Debug, Clone)]
pub struct PermList {
    degree: usize,
    flat: Vec<u16>,
}

impl PermList {
    pub fn new(degree: usize) -> Self {
        PermList { degree, flat: Vec::new() }
    }

    pub fn from_perms(perms: &[Permutation]) -> Result<Self, PermError> {
        let degree = perms.first().map_or(0, Permutation::degree);
        let mut list = PermList::new(degree);
        for p in perms {
            list.push_slice(p.images())?;
        }
        Ok(list)
    }

    pub fn push_slice(&mut self, images: &[u16]) -> Result<(), PermError> {
        if images.len() != self.degree {
            return Err(PermError::DegreeMismatch(images.len(), self.degree));
        }
        self.flat.extend_from_slice(images);
        Ok(())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        if self.degree == 0 {
            0
        } else {
            self.flat.len() / self.degree
        }
    }

    pub fn is_empty(&self) -> bool {
        self.flat.is_empty()
    }

    #[inline]
    pub fn get(&self, i: usize) -> &[u16] {
        &self.flat[i * self.degree..(i + 1) * self.degree]
    }

    /// Image of vertex v under element i.
    #[inline]
    pub fn image(&self, i: usize, v: u16) -> u16 {
        self.flat[i * self.degree + v as usize]
    }

    pub fn to_perm(&self, i: usize) -> Permutation {
        Permutation { images: self.get(i).to_vec() }
    }

    pub fn iter(&self) -> impl Iterator<Item = &[u16]> {
        self.flat.chunks_exact(self.degree.max(1))
    }
}

/// A projective semilinear map: invertible 4x4 matrix composed with a
/// Frobenius power sigma = x -> x^{p^k}. Acts on points as v -> M sigma(v).
#[derive(Debug, Clone)]
pub struct SemilinearMap {
    pub matrix: [[Elem; 4]; 4],
    pub frob_power: u32,
}

impl SemilinearMap {
    pub fn new(f: &FieldSpec, matrix: [[Elem; 4]; 4], frob_power: u32) -> Result<Self, PermError> {
        if linalg::det4(f, &matrix).is_zero() {
            return Err(PermError::SingularMatrix);
        }
        Ok(SemilinearMap { matrix, frob_power })
    }

    pub fn linear(f: &FieldSpec, matrix: [[Elem; 4]; 4]) -> Result<Self, PermError> {
        Self::new(f, matrix, 0)
    }

    fn apply_point(&self, f: &FieldSpec, p: &ProjPoint) -> ProjPoint {
        let twisted: Vec<Elem> =
            p.coords().iter().map(|&c| f.frobenius(c, self.frob_power)).collect();
        let mut out = [Elem::ZERO; 4];
        for (r, row) in self.matrix.iter().enumerate() {
            for (c, &m) in row.iter().enumerate() {
                out[r] = f.add(out[r], f.mul(m, twisted[c]));
            }
        }
        ProjPoint::new(f, out).expect("invertible map of a nonzero vector")
    }
}

/// Vertex permutation induced on the line table by a semilinear map.
/// Failure of any image line to appear in the table doubles as the
/// membership test for the automorphism action on lines.
pub fn semilinear_to_perm(table: &LineTable, m: &SemilinearMap) -> Result<Permutation, PermError> {
    let f = table.field();
    let mut images = Vec::with_capacity(table.len());
    let mut seen = vec![false; table.len()];
    for (idx, line) in table.lines().iter().enumerate() {
        let pts = line.points(f);
        let a = m.apply_point(f, &pts[0]);
        let b = m.apply_point(f, &pts[1]);
        let image = ProjLine::from_points(f, &a, &b)
            .map_err(|_| PermError::NotAnAutomorphism { line: idx })?;
        let img_idx =
            table.index_of(&image).ok_or(PermError::NotAnAutomorphism { line: idx })?;
        if seen[img_idx as usize] {
            return Err(PermError::NotBijection);
        }
        seen[img_idx as usize] = true;
        images.push(img_idx);
    }
    Ok(Permutation { images })
}

fn identity_matrix() -> [[Elem; 4]; 4] {
    let mut m = [[Elem::ZERO; 4]; 4];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Elem::ONE;
    }
    m
}

/// Scans 2x2 matrices M over GF(q^2) in lexicographic order (entries ordered
/// zero first, then ascending powers of mu) for conj-transpose(M) . M = c I
/// with c a nonzero subfield element, returning the first non-monomial
/// solution. For q = 2 no such matrix exists: every unitary similitude of a
/// 2-dimensional Hermitian space over GF(4) is monomial.
pub fn find_unitary_block(f: &FieldSpec) -> Result<[[Elem; 2]; 2], PermError> {
    let elems: Vec<Elem> = f.elements().collect();
    for &a in &elems {
        for &b in &elems {
            for &c in &elems {
                for &d in &elems {
                    let monomial = (b.is_zero() && c.is_zero()) || (a.is_zero() && d.is_zero());
                    if monomial {
                        continue;
                    }
                    if unitary_2x2(f, a, b, c, d) {
                        return Ok([[a, b], [c, d]]);
                    }
                }
            }
        }
    }
    Err(PermError::NotFound)
}

fn unitary_2x2(f: &FieldSpec, a: Elem, b: Elem, c: Elem, d: Elem) -> bool {
    // Columns (a,c) and (b,d): equal nonzero Hermitian norms, zero product.
    let n1 = f.add(f.mul(f.conj(a), a), f.mul(f.conj(c), c));
    if n1.is_zero() {
        return false;
    }
    let n2 = f.add(f.mul(f.conj(b), b), f.mul(f.conj(d), d));
    if n1 != n2 {
        return false;
    }
    let cross = f.add(f.mul(f.conj(a), b), f.mul(f.conj(c), d));
    cross.is_zero()
}

/// 3x3 fallback used at q = 2, where no non-monomial 2x2 block exists.
fn find_unitary_block3(f: &FieldSpec) -> Result<[[Elem; 3]; 3], PermError> {
    let elems: Vec<Elem> = f.elements().collect();
    let norm_col = |m: &[[Elem; 3]; 3], j: usize| -> Elem {
        (0..3).fold(Elem::ZERO, |acc, i| f.add(acc, f.mul(f.conj(m[i][j]), m[i][j])))
    };
    let cross_col = |m: &[[Elem; 3]; 3], j: usize, k: usize| -> Elem {
        (0..3).fold(Elem::ZERO, |acc, i| f.add(acc, f.mul(f.conj(m[i][j]), m[i][k])))
    };
    let mut m = [[Elem::ZERO; 3]; 3];
    let count = elems.len();
    let total = count.pow(9);
    for code in 0..total {
        let mut rem = code;
        for i in 0..3 {
            for j in 0..3 {
                m[i][j] = elems[rem % count];
                rem /= count;
            }
        }
        let monomial = m
            .iter()
            .all(|row| row.iter().filter(|c| !c.is_zero()).count() == 1)
            && (0..3).all(|j| (0..3).filter(|&i| !m[i][j].is_zero()).count() == 1);
        if monomial {
            continue;
        }
        let n0 = norm_col(&m, 0);
        if n0.is_zero() || norm_col(&m, 1) != n0 || norm_col(&m, 2) != n0 {
            continue;
        }
        if !cross_col(&m, 0, 1).is_zero()
            || !cross_col(&m, 0, 2).is_zero()
            || !cross_col(&m, 1, 2).is_zero()
        {
            continue;
        }
        return Ok(m);
    }
    Err(PermError::NotFound)
}

/// Deterministic generator set for a subgroup of Aut(X) acting on lines:
/// coordinate transpositions, one diagonal scaling by a generator of the
/// (q+1)-st roots of unity, the Frobenius x -> x^p, and one non-monomial
/// unitary block. Every generator is validated through `semilinear_to_perm`.
pub fn builtin_generators(table: &LineTable) -> Result<Vec<Permutation>, PermError> {
    let f = table.field();
    let q = f.q();
    let mut gens = Vec::new();

    for (i, j) in [(0usize, 1usize), (1, 2), (2, 3)] {
        let mut m = identity_matrix();
        m[i][i] = Elem::ZERO;
        m[j][j] = Elem::ZERO;
        m[i][j] = Elem::ONE;
        m[j][i] = Elem::ONE;
        gens.push(semilinear_to_perm(table, &SemilinearMap::linear(f, m)?)?);
    }

    // diag(c,1,1,1) with c = mu^{q-1}, a generator of the (q+1)-st roots.
    let mut diag = identity_matrix();
    diag[0][0] = f.mu_pow(q as i64 - 1);
    gens.push(semilinear_to_perm(table, &SemilinearMap::linear(f, diag)?)?);

    gens.push(semilinear_to_perm(table, &SemilinearMap::new(f, identity_matrix(), 1)?)?);

    // The block search returns a similitude (conj-transpose(M) M = c I);
    // rescale by an element of norm c^{-1} so identity padding keeps the
    // whole 4x4 matrix a similitude.
    match find_unitary_block(f) {
        Ok(block) => {
            let lam = f.add(
                f.mul(f.conj(block[0][0]), block[0][0]),
                f.mul(f.conj(block[1][0]), block[1][0]),
            );
            let s = norm_root(f, f.inv(lam).expect("similitude factor is nonzero"));
            let mut m = identity_matrix();
            for i in 0..2 {
                for j in 0..2 {
                    m[i][j] = f.mul(s, block[i][j]);
                }
            }
            gens.push(semilinear_to_perm(table, &SemilinearMap::linear(f, m)?)?);
        }
        Err(PermError::NotFound) => {
            let block = find_unitary_block3(f)?;
            let lam = (0..3).fold(Elem::ZERO, |acc, i| {
                f.add(acc, f.mul(f.conj(block[i][0]), block[i][0]))
            });
            let s = norm_root(f, f.inv(lam).expect("similitude factor is nonzero"));
            let mut m = identity_matrix();
            for i in 0..3 {
                for j in 0..3 {
                    m[i][j] = f.mul(s, block[i][j]);
                }
            }
            gens.push(semilinear_to_perm(table, &SemilinearMap::linear(f, m)?)?);
        }
        Err(e) => return Err(e),
    }

    Ok(gens)
}

/// First element whose norm is the given subfield value.
fn norm_root(f: &FieldSpec, target: Elem) -> Elem {
    f.elements()
        .find(|&s| f.norm(s) == target)
        .expect("the norm map is onto the subfield")
}

/// Packs a permutation into a u128 when the degree is small enough,
/// avoiding per-element heap keys during large closures.
fn pack_key(images: &[u16], bits: u32) -> Option<u128> {
    if images.len() as u32 * bits > 128 {
        return None;
    }
    let mut acc = 0u128;
    for &x in images.iter().rev() {
        acc = (acc << bits) | x as u128;
    }
    Some(acc)
}

enum DedupSet {
    Packed { bits: u32, set: HashSet<u128> },
    Boxed(HashSet<Box<[u16]>>),
}

impl DedupSet {
    fn new(degree: usize) -> Self {
        let bits = (degree.max(2) as u32).next_power_of_two().trailing_zeros().max(1);
        // Round up so every value 0..degree fits.
        let bits = if (1u32 << bits) < degree as u32 { bits + 1 } else { bits };
        if degree as u32 * bits <= 128 {
            DedupSet::Packed { bits, set: HashSet::new() }
        } else {
            DedupSet::Boxed(HashSet::new())
        }
    }

    fn insert(&mut self, images: &[u16]) -> bool {
        match self {
            DedupSet::Packed { bits, set } => {
                let key = pack_key(images, *bits).expect("degree fits packed key");
                set.insert(key)
            }
            DedupSet::Boxed(set) => set.insert(images.to_vec().into_boxed_slice()),
        }
    }
}

/// Breadth-first closure of the generated group, in discovery order with
/// the identity first. Errors out once more than `cap` elements appear.
pub fn closure(gens: &[Permutation], cap: usize) -> Result<PermList, PermError> {
    let degree = match gens.first() {
        Some(g) => g.degree(),
        None => return Err(PermError::NotBijection),
    };
    for g in gens {
        if g.degree() != degree {
            return Err(PermError::DegreeMismatch(degree, g.degree()));
        }
    }
    let mut list = PermList::new(degree);
    let mut seen = DedupSet::new(degree);
    let id = Permutation::identity(degree);
    seen.insert(id.images());
    list.push_slice(id.images())?;
    let mut frontier = 0usize;
    let mut scratch = vec![0u16; degree];
    while frontier < list.len() {
        for g in gens {
            let cur = list.get(frontier);
            for (i, &x) in cur.iter().enumerate() {
                scratch[i] = g.images[x as usize];
            }
            if seen.insert(&scratch) {
                if list.len() >= cap {
                    return Err(PermError::ClosureCapExceeded(cap));
                }
                list.push_slice(&scratch)?;
            }
        }
        frontier += 1;
    }
    Ok(list)
}

/// Orbit of `base` under the generators, with a transversal mapping
/// `base` to each orbit point.
pub fn orbit_transversal(
    gens: &[Permutation],
    base: u16,
) -> (Vec<u16>, HashMap<u16, Permutation>) {
    let degree = gens.first().map_or(base as usize + 1, Permutation::degree);
    let mut orbit = vec![base];
    let mut trans: HashMap<u16, Permutation> = HashMap::new();
    trans.insert(base, Permutation::identity(degree));
    let mut frontier = 0;
    while frontier < orbit.len() {
        let x = orbit[frontier];
        frontier += 1;
        for g in gens {
            let y = g.apply(x);
            if !trans.contains_key(&y) {
                let t = g.compose(&trans[&x]).expect("same degree");
                trans.insert(y, t);
                orbit.push(y);
            }
        }
    }
    (orbit, trans)
}

/// Schreier generators of the stabilizer of the orbit's base point,
/// deduplicated and with the identity dropped.
fn schreier_generators(
    gens: &[Permutation],
    orbit: &[u16],
    trans: &HashMap<u16, Permutation>,
) -> Vec<Permutation> {
    let degree = gens.first().map_or(0, Permutation::degree);
    let mut out = Vec::new();
    let mut seen = DedupSet::new(degree);
    seen.insert(Permutation::identity(degree).images());
    for &x in orbit {
        let tx = &trans[&x];
        for g in gens {
            let gx = g.apply(x);
            let u = trans[&gx].invert().compose(g).expect("same degree");
            let u = u.compose(tx).expect("same degree");
            if seen.insert(u.images()) {
                out.push(u);
            }
        }
    }
    out
}

/// One level of the stabilizer chain.
#[derive(Debug, Clone)]
pub struct OrbitLevel {
    pub base: u16,
    pub orbit: Vec<u16>,
    pub transversal: HashMap<u16, Permutation>,
}

/// Result of the three-step orbit-stabilizer computation: per-level orbits
/// and transversals plus the explicit element list of the final stabilizer.
#[derive(Debug)]
pub struct StabChainResult {
    pub levels: Vec<OrbitLevel>,
    pub stabilizer: PermList,
}

impl StabChainResult {
    /// Product of the orbit sizes; together with the stabilizer order this
    /// gives |G| by orbit-stabilizer whenever the chain is exact.
    pub fn orbit_product(&self) -> u64 {
        self.levels.iter().map(|l| l.orbit.len() as u64).product()
    }
}

/// Ordered stabilizer of (v0, v1, v2): Schreier generators are taken at
/// each level and the final stabilizer is returned as an explicit element
/// list via closure.
pub fn triple_stabilizer(
    gens: &[Permutation],
    base: [u16; 3],
    cap: usize,
) -> Result<StabChainResult, PermError> {
    let degree = gens.first().map(Permutation::degree).unwrap_or(0);
    if base[0] == base[1] || base[0] == base[2] || base[1] == base[2] {
        return Err(PermError::NotSkewTriple);
    }
    let mut levels = Vec::with_capacity(3);
    let mut current: Vec<Permutation> = gens.to_vec();
    for &b in &base {
        let (orbit, trans) = orbit_transversal(&current, b);
        let next = schreier_generators(&current, &orbit, &trans);
        levels.push(OrbitLevel { base: b, orbit, transversal: trans });
        current = next;
    }
    let stabilizer = if current.is_empty() {
        PermList::from_perms(&[Permutation::identity(degree)])?
    } else {
        closure(&current, cap)?
    };
    // Every element must fix the base pointwise.
    for p in stabilizer.iter() {
        for &b in &base {
            debug_assert_eq!(p[b as usize], b, "stabilizer element moves a base point");
        }
    }
    Ok(StabChainResult { levels, stabilizer })
}

/// Result of comparing the orbit of an ordered skew triple with the total
/// number of ordered skew triples in the graph.
#[derive(Debug, Clone, Copy)]
pub struct TransitivityReport {
    pub orbit_size: u64,
    pub total_ordered_triples: u64,
}

impl TransitivityReport {
    pub fn is_transitive(&self) -> bool {
        self.orbit_size == self.total_ordered_triples
    }

    pub fn fraction(&self) -> f64 {
        self.orbit_size as f64 / self.total_ordered_triples as f64
    }
}

/// Counts ordered skew triples by brute force over adjacent pairs and their
/// common neighbors.
pub fn count_ordered_skew_triples(g: &SkewGraph) -> u64 {
    let mut total = 0u64;
    for u in 0..g.n() {
        for v in g.neighbors(u).iter() {
            total += g.neighbors(u).and_count(g.neighbors(v)) as u64;
        }
    }
    total
}

/// True iff the orbit of the ordered base triple under the generated group
/// covers every ordered skew triple of the graph.
pub fn transitivity_check(
    gens: &[Permutation],
    g: &SkewGraph,
    base: [u16; 3],
) -> Result<TransitivityReport, PermError> {
    let pairs = [(0, 1), (0, 2), (1, 2)];
    for (i, j) in pairs {
        if base[i] == base[j]
            || !g.are_adjacent(base[i] as usize, base[j] as usize)
        {
            return Err(PermError::NotSkewTriple);
        }
    }
    let n = g.n() as u64;
    let encode = |t: [u16; 3]| -> u64 {
        (t[0] as u64 * n + t[1] as u64) * n + t[2] as u64
    };
    let total = count_ordered_skew_triples(g);
    let mut visited = vec![0u64; ((n * n * n) as usize).div_ceil(64)];
    let mut queue: Vec<[u16; 3]> = vec![base];
    let mark = |visited: &mut [u64], code: u64| -> bool {
        let (w, b) = ((code / 64) as usize, code % 64);
        let fresh = visited[w] >> b & 1 == 0;
        visited[w] |= 1 << b;
        fresh
    };
    mark(&mut visited, encode(base));
    let mut orbit_size = 0u64;
    let mut head = 0;
    while head < queue.len() {
        let t = queue[head];
        head += 1;
        orbit_size += 1;
        for gperm in gens {
            let img = [gperm.apply(t[0]), gperm.apply(t[1]), gperm.apply(t[2])];
            if mark(&mut visited, encode(img)) {
                queue.push(img);
            }
        }
    }
    Ok(TransitivityReport { orbit_size, total_ordered_triples: total })
}

/// Reads a permutation file: one permutation per line, n space-separated
/// 0-based images.
pub fn read_perm_file<R: BufRead>(r: R) -> Result<Vec<Permutation>, PermError> {
    let mut perms = Vec::new();
    for (lineno, line) in r.lines().enumerate() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let images: Result<Vec<u16>, _> = line.split_whitespace().map(str::parse).collect();
        let images = images
            .map_err(|e| PermError::BadPermFile(format!("line {}: {e}", lineno + 1)))?;
        let perm = Permutation::from_images(images)
            .map_err(|_| PermError::BadPermFile(format!("line {}: not a bijection", lineno + 1)))?;
        if let Some(first) = perms.first() {
            let first: &Permutation = first;
            if first.degree() != perm.degree() {
                return Err(PermError::BadPermFile(format!(
                    "line {}: degree {} != {}",
                    lineno + 1,
                    perm.degree(),
                    first.degree()
                )));
            }
        }
        perms.push(perm);
    }
    Ok(perms)
}

pub fn write_perm_file<'a, W: Write>(
    mut w: W,
    perms: impl IntoIterator<Item = &'a [u16]>,
) -> Result<(), PermError> {
    for images in perms {
        let line: Vec<String> = images.iter().map(u16::to_string).collect();
        writeln!(w, "{}", line.join(" "))?;
    }
    Ok(())
}
