//! Maximal-clique enumeration: Bron-Kerbosch with pivoting, the orbit-pruned
//! variant driven by an explicit stabilizer list, censuses, and the
//! worst-case fixture graph.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use thiserror::Error;

use crate::graph::{SkewGraph, VertexSet};
use crate::perm::{PermList, Permutation};

#[derive(Debug, Error)]
pub enum CliqueError {
    #[error("precondition violated: {0}")]
    PreconditionViolated(&'static str),
    #[error("pivot pool P union E is empty")]
    EmptyPivotPool,
    #[error("stabilizer invalid: {0}")]
    InvalidStabilizer(&'static str),
    #[error("orbit expansion exceeded cap of {0}")]
    ClosureCapExceeded(usize),
}

/// Histogram of maximal cliques by size.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CliqueCensus {
    pub histogram: BTreeMap<usize, u64>,
    pub total: u64,
}

impl CliqueCensus {
    fn record(&mut self, size: usize) {
        *self.histogram.entry(size).or_insert(0) += 1;
        self.total += 1;
    }

    fn merge(mut self, other: CliqueCensus) -> CliqueCensus {
        for (size, count) in other.histogram {
            *self.histogram.entry(size).or_insert(0) += count;
        }
        self.total += other.total;
        self
    }
}

/// Pivot rule: the u in P union E maximizing |P AND N(u)|, ties broken by
/// smallest vertex index.
pub fn choose_pivot(g: &SkewGraph, p: &VertexSet, e: &VertexSet) -> Result<usize, CliqueError> {
    let mut best: Option<(usize, usize)> = None;
    for u in p.or(e).iter() {
        let c = p.and_count(g.neighbors(u));
        if best.map_or(true, |(bc, _)| c > bc) {
            best = Some((c, u));
        }
    }
    best.map(|(_, u)| u).ok_or(CliqueError::EmptyPivotPool)
}

fn validate_rpe(
    g: &SkewGraph,
    r: &VertexSet,
    p: &VertexSet,
    e: &VertexSet,
) -> Result<(), CliqueError> {
    let rs: Vec<usize> = r.iter().collect();
    for (i, &u) in rs.iter().enumerate() {
        for &v in &rs[i + 1..] {
            if !g.are_adjacent(u, v) {
                return Err(CliqueError::PreconditionViolated("R is not a clique"));
            }
        }
    }
    if !r.is_disjoint(p) || !r.is_disjoint(e) || !p.is_disjoint(e) {
        return Err(CliqueError::PreconditionViolated("R, P, E are not pairwise disjoint"));
    }
    for &u in &rs {
        if !p.is_subset(g.neighbors(u)) || !e.is_subset(g.neighbors(u)) {
            return Err(CliqueError::PreconditionViolated(
                "P and E must consist of common neighbors of R",
            ));
        }
    }
    Ok(())
}

fn bk_rec(
    g: &SkewGraph,
    r: &mut Vec<u16>,
    p: &mut VertexSet,
    e: &mut VertexSet,
    sink: &mut dyn FnMut(&[u16]),
) {
    if p.is_empty() {
        if e.is_empty() {
            sink(r);
        }
        return;
    }
    let u = choose_pivot(g, p, e).expect("P is nonempty");
    let candidates = p.minus(g.neighbors(u));
    for v in candidates.iter() {
        let mut p2 = p.and(g.neighbors(v));
        let mut e2 = e.and(g.neighbors(v));
        r.push(v as u16);
        bk_rec(g, r, &mut p2, &mut e2, sink);
        r.pop();
        p.remove(v);
        e.insert(v);
    }
}

/// Bron-Kerbosch with pivoting. The sink receives each maximal clique of g
/// containing R and contained in R union P exactly once, as an unsorted
/// vertex list.
pub fn bk_pivot(
    g: &SkewGraph,
    r: &VertexSet,
    p: &VertexSet,
    e: &VertexSet,
    sink: &mut dyn FnMut(&[u16]),
) -> Result<(), CliqueError> {
    validate_rpe(g, r, p, e)?;
    let mut rv = r.to_vec();
    bk_rec(g, &mut rv, &mut p.clone(), &mut e.clone(), sink);
    Ok(())
}

/// Collects the maximal cliques reported by `bk_pivot` as sorted vertex
/// lists.
pub fn bk_pivot_collect(
    g: &SkewGraph,
    r: &VertexSet,
    p: &VertexSet,
    e: &VertexSet,
) -> Result<Vec<Vec<u16>>, CliqueError> {
    let mut out = Vec::new();
    bk_pivot(g, r, p, e, &mut |clique| {
        let mut c = clique.to_vec();
        c.sort_unstable();
        out.push(c);
    })?;
    Ok(out)
}

/// Streaming sink for parallel clique enumeration. Delivery is concurrent
/// and unordered.
pub trait CliqueSink: Sync {
    fn accept(&self, clique: &[u16]);
}

impl<F: Fn(&[u16]) + Sync> CliqueSink for F {
    fn accept(&self, clique: &[u16]) {
        self(clique)
    }
}

fn census_rec(
    g: &SkewGraph,
    r: &mut Vec<u16>,
    p: &mut VertexSet,
    e: &mut VertexSet,
    depth: usize,
    par_depth: usize,
    sink: Option<&dyn CliqueSink>,
    census: &mut CliqueCensus,
) {
    if p.is_empty() {
        if e.is_empty() {
            census.record(r.len());
            if let Some(s) = sink {
                s.accept(r);
            }
        }
        return;
    }
    let u = choose_pivot(g, p, e).expect("P is nonempty");
    let candidates = p.minus(g.neighbors(u));
    if depth < par_depth {
        // Materialize the branch states up-front; the histogram merge is
        // commutative, so counts are independent of worker scheduling.
        let mut branches = Vec::new();
        for v in candidates.iter() {
            branches.push((v, p.and(g.neighbors(v)), e.and(g.neighbors(v))));
            p.remove(v);
            e.insert(v);
        }
        let r_snapshot = r.clone();
        let merged = branches
            .into_par_iter()
            .map(|(v, mut p2, mut e2)| {
                let mut local = CliqueCensus::default();
                let mut r2 = r_snapshot.clone();
                r2.push(v as u16);
                census_rec(g, &mut r2, &mut p2, &mut e2, depth + 1, par_depth, sink, &mut local);
                local
            })
            .reduce(CliqueCensus::default, CliqueCensus::merge);
        *census = std::mem::take(census).merge(merged);
    } else {
        for v in candidates.iter() {
            let mut p2 = p.and(g.neighbors(v));
            let mut e2 = e.and(g.neighbors(v));
            r.push(v as u16);
            census_rec(g, r, &mut p2, &mut e2, depth + 1, par_depth, sink, census);
            r.pop();
            p.remove(v);
            e.insert(v);
        }
    }
}

/// Full census from (empty, V, empty), single-threaded.
pub fn census(g: &SkewGraph) -> CliqueCensus {
    census_from(g, &VertexSet::empty(g.n()), &VertexSet::full(g.n()), &VertexSet::empty(g.n()), 1, None)
        .expect("empty R is a valid start")
}

/// Census from an arbitrary start state, optionally parallel across the top
/// levels of the search tree and optionally streaming cliques to a sink.
pub fn census_from(
    g: &SkewGraph,
    r: &VertexSet,
    p: &VertexSet,
    e: &VertexSet,
    jobs: usize,
    sink: Option<&dyn CliqueSink>,
) -> Result<CliqueCensus, CliqueError> {
    validate_rpe(g, r, p, e)?;
    let par_depth = if jobs > 1 { 2 } else { 0 };
    let mut census = CliqueCensus::default();
    let mut rv = r.to_vec();
    let run = |census: &mut CliqueCensus, rv: &mut Vec<u16>| {
        census_rec(g, rv, &mut p.clone(), &mut e.clone(), 0, par_depth, sink, census);
    };
    if jobs > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .expect("thread pool construction");
        pool.install(|| run(&mut census, &mut rv));
    } else {
        run(&mut census, &mut rv);
    }
    Ok(census)
}

/// The complete k-partite graph on 3k vertices (parts of size 3), the
/// unique n-vertex graph attaining the 3^{n/3} maximal-clique bound.
pub fn moon_moser(k: usize) -> SkewGraph {
    let n = 3 * k;
    let mut g = SkewGraph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            if u / 3 != v / 3 {
                g.add_edge(u, v).expect("in range");
            }
        }
    }
    g
}

/// Generators of the automorphism group of `moon_moser(k)`, of order
/// k! * 6^k: swap and 3-cycle inside the first part, plus a part swap and a
/// part cycle when k > 1.
pub fn moon_moser_generators(k: usize) -> Vec<Permutation> {
    let n = 3 * k;
    let mut gens = Vec::new();
    let mut swap01: Vec<u16> = (0..n as u16).collect();
    swap01.swap(0, 1);
    gens.push(Permutation::from_images(swap01).expect("bijection"));
    let mut cycle012: Vec<u16> = (0..n as u16).collect();
    cycle012[0] = 1;
    cycle012[1] = 2;
    cycle012[2] = 0;
    gens.push(Permutation::from_images(cycle012).expect("bijection"));
    if k > 1 {
        let mut part_swap: Vec<u16> = (0..n as u16).collect();
        for j in 0..3 {
            part_swap[j] = (3 + j) as u16;
            part_swap[3 + j] = j as u16;
        }
        gens.push(Permutation::from_images(part_swap).expect("bijection"));
        let part_cycle: Vec<u16> = (0..n).map(|v| ((v + 3) % n) as u16).collect();
        gens.push(Permutation::from_images(part_cycle).expect("bijection"));
    }
    gens
}

/// Orbit representatives of P under the listed stabilizer elements: pop the
/// first remaining vertex, record it, and delete its images.
fn orbit_reps(p: &VertexSet, stab: &PermList, active: &[u32]) -> Vec<u16> {
    let mut pcopy = p.clone();
    let mut reps = Vec::new();
    while let Some(l) = pcopy.first() {
        reps.push(l as u16);
        pcopy.remove(l);
        for &i in active {
            pcopy.remove(stab.image(i as usize, l as u16) as usize);
        }
    }
    reps
}

/// Options for the orbit-pruned search.
#[derive(Debug, Clone, Copy, Default)]
pub struct OrbitOptions {
    /// Restrict the orbit representatives to P minus N(pivot). The printed
    /// algorithm computes the pivot but iterates representatives of all of
    /// P; this variant exists for comparison experiments and is not
    /// guaranteed to cover every orbit.
    pub pivot_prune: bool,
    /// Stop after emitting this many representatives.
    pub max_reps: Option<u64>,
}

/// Outcome of an orbit-pruned run.
#[derive(Debug, Clone)]
pub struct OrbitOutcome {
    pub emitted: u64,
    /// False iff the run stopped early on `max_reps`.
    pub completed: bool,
    /// Top-level branch vertices that ran to completion, in order.
    pub completed_top_branches: Vec<u16>,
}

struct OrbitCtx<'a> {
    g: &'a SkewGraph,
    stab: &'a PermList,
    opts: OrbitOptions,
    emitted: u64,
    stopped: bool,
}

fn bk_orbits_rec(
    ctx: &mut OrbitCtx<'_>,
    r: &mut Vec<u16>,
    p: &VertexSet,
    e: &VertexSet,
    active: Vec<u32>,
    depth: usize,
    skip_top: Option<&BTreeSet<u16>>,
    completed_top: &mut Vec<u16>,
    sink: &mut dyn FnMut(&[u16]),
) {
    if ctx.stopped {
        return;
    }
    if p.is_empty() && e.is_empty() {
        sink(r);
        ctx.emitted += 1;
        if ctx.opts.max_reps.is_some_and(|cap| ctx.emitted >= cap) {
            ctx.stopped = true;
        }
        return;
    }
    if p.is_empty() {
        return;
    }
    // The pivot is part of the printed algorithm even though the default
    // iteration runs over representatives of all of P.
    let u = choose_pivot(ctx.g, p, e).expect("P is nonempty");
    let rep_pool = if ctx.opts.pivot_prune { p.minus(ctx.g.neighbors(u)) } else { p.clone() };
    let reps = orbit_reps(&rep_pool, ctx.stab, &active);

    let mut p_cur = p.clone();
    let mut e_cur = e.clone();
    let mut active_cur = active;
    for v in reps {
        let stab_v: Vec<u32> = active_cur
            .iter()
            .copied()
            .filter(|&i| ctx.stab.image(i as usize, v) == v)
            .collect();
        let run_branch = skip_top.is_none_or(|skip| !skip.contains(&v));
        if run_branch {
            let mut p2 = p_cur.and(ctx.g.neighbors(v as usize));
            let mut e2 = e_cur.and(ctx.g.neighbors(v as usize));
            r.push(v);
            bk_orbits_rec(
                ctx,
                r,
                &mut p2,
                &mut e2,
                stab_v.clone(),
                depth + 1,
                None,
                completed_top,
                sink,
            );
            r.pop();
            if ctx.stopped {
                return;
            }
        }
        if depth == 0 {
            completed_top.push(v);
        }
        p_cur.remove(v as usize);
        e_cur.insert(v as usize);
        active_cur = stab_v;
    }
}

/// Bron-Kerbosch with orbit pruning. `stab` must be an explicit element
/// list of a group fixing R pointwise and preserving adjacency; at least
/// one representative of each orbit of maximal cliques containing R (under
/// that group) is reported.
///
/// `skip_top` names top-level branch vertices to skip (already-completed
/// checkpointed branches); their P/E/stabilizer bookkeeping still runs so
/// the remaining branches see the exact states of an uninterrupted run.
pub fn bk_orbits(
    g: &SkewGraph,
    r: &VertexSet,
    p: &VertexSet,
    e: &VertexSet,
    stab: &PermList,
    opts: OrbitOptions,
    skip_top: Option<&BTreeSet<u16>>,
    sink: &mut dyn FnMut(&[u16]),
) -> Result<OrbitOutcome, CliqueError> {
    validate_rpe(g, r, p, e)?;
    if stab.is_empty() {
        return Err(CliqueError::InvalidStabilizer("stabilizer list is empty"));
    }
    if stab.degree() != g.n() {
        return Err(CliqueError::InvalidStabilizer("stabilizer degree differs from graph order"));
    }
    for perm in stab.iter() {
        let mut seen = vec![false; g.n()];
        for &img in perm {
            if img as usize >= g.n() || seen[img as usize] {
                return Err(CliqueError::InvalidStabilizer("element is not a bijection"));
            }
            seen[img as usize] = true;
        }
        for v in r.iter() {
            if perm[v] as usize != v {
                return Err(CliqueError::InvalidStabilizer("element moves a vertex of R"));
            }
        }
    }
    for (i, perm) in stab.iter().enumerate() {
        let p0 = stab.to_perm(i);
        let _ = perm;
        if !p0.preserves_adjacency(g) {
            return Err(CliqueError::InvalidStabilizer("element breaks an edge"));
        }
    }

    let mut ctx = OrbitCtx { g, stab, opts, emitted: 0, stopped: false };
    let active: Vec<u32> = (0..stab.len() as u32).collect();
    let mut rv = r.to_vec();
    let mut completed_top = Vec::new();
    bk_orbits_rec(
        &mut ctx,
        &mut rv,
        &p.clone(),
        &e.clone(),
        active,
        0,
        skip_top,
        &mut completed_top,
        sink,
    );
    Ok(OrbitOutcome {
        emitted: ctx.emitted,
        completed: !ctx.stopped,
        completed_top_branches: completed_top,
    })
}

/// Convenience wrapper collecting the emitted representatives sorted.
pub fn bk_orbits_collect(
    g: &SkewGraph,
    r: &VertexSet,
    p: &VertexSet,
    e: &VertexSet,
    stab: &PermList,
    opts: OrbitOptions,
) -> Result<Vec<Vec<u16>>, CliqueError> {
    let mut reps = Vec::new();
    bk_orbits(g, r, p, e, stab, opts, None, &mut |clique| {
        let mut c = clique.to_vec();
        c.sort_unstable();
        reps.push(c);
    })?;
    Ok(reps)
}

/// Expands orbit representatives under the group generated by `group`
/// (closure is taken on the clique sets, not on the permutations), returning
/// the deduplicated set of sorted cliques.
pub fn expand_orbits(
    reps: &[Vec<u16>],
    group: &[Permutation],
    cap: usize,
) -> Result<BTreeSet<Vec<u16>>, CliqueError> {
    let mut set: BTreeSet<Vec<u16>> = BTreeSet::new();
    let mut queue: Vec<Vec<u16>> = Vec::new();
    for rep in reps {
        let mut sorted = rep.clone();
        sorted.sort_unstable();
        if set.insert(sorted.clone()) {
            queue.push(sorted);
        }
    }
    while let Some(clique) = queue.pop() {
        for g in group {
            let img = g.apply_to_sorted(&clique);
            if !set.contains(&img) {
                if set.len() >= cap {
                    return Err(CliqueError::ClosureCapExceeded(cap));
                }
                set.insert(img.clone());
                queue.push(img);
            }
        }
    }
    Ok(set)
}

/// Checks that a vertex list is a maximal clique of g.
pub fn is_maximal_clique(g: &SkewGraph, clique: &[u16]) -> bool {
    for (i, &u) in clique.iter().enumerate() {
        for &v in &clique[i + 1..] {
            if !g.are_adjacent(u as usize, v as usize) {
                return false;
            }
        }
    }
    let mut common = VertexSet::full(g.n());
    for &u in clique {
        common.and_assign(g.neighbors(u as usize));
    }
    common.is_empty()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::build_field;
    use crate::geometry::enumerate_lines;
    use crate::graph::build_skew_graph;
    use crate::perm::closure;

    fn gx(q: u64) -> SkewGraph {
        let f = match q {
            2 => build_field(2, 1).unwrap(),
            3 => build_field(3, 1).unwrap(),
            _ => panic!(),
        };
        build_skew_graph(&enumerate_lines(f).unwrap())
    }

    fn start_sets(n: usize) -> (VertexSet, VertexSet, VertexSet) {
        (VertexSet::empty(n), VertexSet::full(n), VertexSet::empty(n))
    }

    #[test]
    fn triangle_has_one_maximal_clique() {
        let g = SkewGraph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let (r, p, e) = start_sets(3);
        let cliques = bk_pivot_collect(&g, &r, &p, &e).unwrap();
        assert_eq!(cliques, vec![vec![0, 1, 2]]);
    }

    #[test]
    fn empty_graph_census() {
        let g = SkewGraph::empty(7);
        let c = census(&g);
        assert_eq!(c.total, 7);
        assert_eq!(c.histogram.get(&1), Some(&7));
    }

    #[test]
    fn q2_census_is_216_and_72() {
        let g = gx(2);
        let c = census(&g);
        assert_eq!(c.histogram, BTreeMap::from([(5, 216), (6, 72)]));
        assert_eq!(c.total, 288);
    }

    #[test]
    fn q2_cliques_are_maximal_and_distinct() {
        let g = gx(2);
        let (r, p, e) = start_sets(g.n());
        let cliques = bk_pivot_collect(&g, &r, &p, &e).unwrap();
        let set: BTreeSet<Vec<u16>> = cliques.iter().cloned().collect();
        assert_eq!(set.len(), cliques.len(), "no duplicates");
        for c in &cliques {
            assert!(is_maximal_clique(&g, c));
        }
    }

    #[test]
    fn parallel_census_matches_serial() {
        let g = gx(2);
        let (r, p, e) = start_sets(g.n());
        let serial = census(&g);
        let parallel = census_from(&g, &r, &p, &e, 4, None).unwrap();
        assert_eq!(serial, parallel);
    }

    #[test]
    fn pivot_rule_examples() {
        // Star: center 0 adjacent to 1..4.
        let g = SkewGraph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        let p = VertexSet::full(5);
        let e = VertexSet::empty(5);
        assert_eq!(choose_pivot(&g, &p, &e).unwrap(), 0);
        // Single candidate.
        let single = VertexSet::from_iter(5, [3]);
        assert_eq!(choose_pivot(&g, &single, &e).unwrap(), 3);
        // Tie on |P AND N(u)|: smallest index wins.
        let g2 = SkewGraph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        let p2 = VertexSet::full(4);
        assert_eq!(choose_pivot(&g2, &p2, &e_of(4)).unwrap(), 0);
        assert!(matches!(
            choose_pivot(&g2, &VertexSet::empty(4), &VertexSet::empty(4)),
            Err(CliqueError::EmptyPivotPool)
        ));
    }

    fn e_of(n: usize) -> VertexSet {
        VertexSet::empty(n)
    }

    #[test]
    fn precondition_validation() {
        let g = SkewGraph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        // R not a clique.
        let r = VertexSet::from_iter(4, [0, 2]);
        let err = bk_pivot_collect(&g, &r, &e_of(4), &e_of(4)).unwrap_err();
        assert!(matches!(err, CliqueError::PreconditionViolated(_)));
        // Overlapping P and E.
        let r = VertexSet::from_iter(4, [0]);
        let p = VertexSet::from_iter(4, [1]);
        let err = bk_pivot_collect(&g, &r, &p, &p).unwrap_err();
        assert!(matches!(err, CliqueError::PreconditionViolated(_)));
        // P not in the common neighborhood of R.
        let p = VertexSet::from_iter(4, [2]);
        let err = bk_pivot_collect(&g, &r, &p, &e_of(4)).unwrap_err();
        assert!(matches!(err, CliqueError::PreconditionViolated(_)));
    }

    #[test]
    fn moon_moser_counts() {
        // k=1: empty graph on 3 vertices, three singleton cliques.
        let c1 = census(&moon_moser(1));
        assert_eq!(c1.histogram, BTreeMap::from([(1, 3)]));
        for k in 2..=4 {
            let c = census(&moon_moser(k));
            assert_eq!(c.total, 3u64.pow(k as u32), "k={k}");
            assert_eq!(c.histogram.get(&k), Some(&3u64.pow(k as u32)));
        }
    }

    #[test]
    fn moon_moser_group_order() {
        // k! * 6^k
        let cl1 = closure(&moon_moser_generators(1), 100).unwrap();
        assert_eq!(cl1.len(), 6);
        let cl2 = closure(&moon_moser_generators(2), 1000).unwrap();
        assert_eq!(cl2.len(), 72);
        let cl3 = closure(&moon_moser_generators(3), 10_000).unwrap();
        assert_eq!(cl3.len(), 6 * 6 * 6 * 6);
    }

    #[test]
    fn bk_orbits_with_trivial_group_matches_bk_pivot() {
        let g = gx(2);
        let (r, p, e) = start_sets(g.n());
        let stab = PermList::from_perms(&[Permutation::identity(g.n())]).unwrap();
        let reps = bk_orbits_collect(&g, &r, &p, &e, &stab, OrbitOptions::default()).unwrap();
        let mut cliques = bk_pivot_collect(&g, &r, &p, &e).unwrap();
        let mut reps_sorted = reps.clone();
        reps_sorted.sort();
        cliques.sort();
        // Identical output, each clique exactly once.
        assert_eq!(reps_sorted, cliques);
        assert_eq!(reps.len(), BTreeSet::from_iter(reps.iter().cloned()).len());
    }

    #[test]
    fn bk_orbits_moon_moser_single_orbit() {
        let g = moon_moser(3);
        let gens = moon_moser_generators(3);
        let group = closure(&gens, 10_000).unwrap();
        let group_perms: Vec<Permutation> = (0..group.len()).map(|i| group.to_perm(i)).collect();
        let (r, p, e) = start_sets(g.n());
        let reps = bk_orbits_collect(&g, &r, &p, &e, &group, OrbitOptions::default()).unwrap();
        for rep in &reps {
            assert!(is_maximal_clique(&g, rep));
        }
        // All representatives lie in the single orbit, and expansion
        // recovers every maximal clique.
        let expanded = expand_orbits(&reps, &group_perms, 1 << 20).unwrap();
        assert_eq!(expanded.len(), 27);
        let one = expand_orbits(&reps[..1].to_vec(), &group_perms, 1 << 20).unwrap();
        assert_eq!(one.len(), 27);
    }

    #[test]
    fn expand_orbits_examples() {
        let id = Permutation::identity(6);
        let reps = vec![vec![0u16, 3], vec![1, 4]];
        let expanded = expand_orbits(&reps, &[id], 100).unwrap();
        assert_eq!(expanded, BTreeSet::from([vec![0, 3], vec![1, 4]]));
        // Moon-Moser k=2: one representative expands to all 9 cliques.
        let g = moon_moser(2);
        let gens = moon_moser_generators(2);
        let (r, p, e) = start_sets(g.n());
        let all = bk_pivot_collect(&g, &r, &p, &e).unwrap();
        assert_eq!(all.len(), 9);
        let expanded = expand_orbits(&[all[0].clone()], &gens, 100).unwrap();
        assert_eq!(expanded.len(), 9);
        // Cap enforcement.
        assert!(matches!(
            expand_orbits(&[all[0].clone()], &gens, 3),
            Err(CliqueError::ClosureCapExceeded(3))
        ));
    }

    #[test]
    fn invalid_stabilizers_are_rejected() {
        let g = gx(2);
        let n = g.n();
        let r = VertexSet::from_iter(n, [0, 4, 8]);
        let p = crate::graph::common_neighbors(&g, &[0, 4, 8]).unwrap();
        let e = VertexSet::empty(n);
        // A permutation moving a vertex of R.
        let mut images: Vec<u16> = (0..n as u16).collect();
        images.swap(0, 4);
        let bad = PermList::from_perms(&[Permutation::from_images(images).unwrap()]).unwrap();
        let err =
            bk_orbits(&g, &r, &p, &e, &bad, OrbitOptions::default(), None, &mut |_| {}).unwrap_err();
        assert!(matches!(err, CliqueError::InvalidStabilizer(_)));
        // A permutation breaking an edge: swap a skew pair with a meeting
        // pair cannot be expressed as a single transposition fixing R, so
        // build one explicitly: swap vertices 1 and 2 (both outside R).
        let mut images: Vec<u16> = (0..n as u16).collect();
        images.swap(1, 2);
        let candidate = Permutation::from_images(images).unwrap();
        if !candidate.preserves_adjacency(&g) {
            let bad = PermList::from_perms(&[candidate]).unwrap();
            let err = bk_orbits(&g, &r, &p, &e, &bad, OrbitOptions::default(), None, &mut |_| {})
                .unwrap_err();
            assert!(matches!(err, CliqueError::InvalidStabilizer(_)));
        }
    }

    /// Oracle: enumerate all 2^n subsets and keep the maximal cliques.
    fn brute_force_maximal_cliques(g: &SkewGraph) -> BTreeSet<Vec<u16>> {
        let n = g.n();
        let mut out = BTreeSet::new();
        for mask in 0u32..(1 << n) {
            let verts: Vec<u16> = (0..n as u16).filter(|&v| mask >> v & 1 == 1).collect();
            if verts.is_empty() {
                continue;
            }
            let is_clique = verts.iter().enumerate().all(|(i, &u)| {
                verts[i + 1..].iter().all(|&v| g.are_adjacent(u as usize, v as usize))
            });
            if !is_clique {
                continue;
            }
            let extendable = (0..n as u16).any(|w| {
                !verts.contains(&w)
                    && verts.iter().all(|&u| g.are_adjacent(u as usize, w as usize))
            });
            if !extendable {
                out.insert(verts);
            }
        }
        out
    }

    #[test]
    fn bk_matches_brute_force_on_random_graphs() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed);
        for _ in 0..40 {
            let n = rng.gen_range(1..=11);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.5) {
                        edges.push((u, v));
                    }
                }
            }
            let g = SkewGraph::from_edges(n, &edges).unwrap();
            let (r, p, e) = start_sets(n);
            let got: BTreeSet<Vec<u16>> =
                bk_pivot_collect(&g, &r, &p, &e).unwrap().into_iter().collect();
            assert_eq!(got, brute_force_maximal_cliques(&g));
        }
    }
}
