// Temporary timing probe; removed before the workspace ships.
use std::time::Instant;

use skewlines_core::{
    build_field, build_skew_graph, clique, enumerate_lines, initial_triple, perm,
};

fn main() {
    let which = std::env::args().nth(1).unwrap_or_default();
    match which.as_str() {
        "census3" => {
            let t0 = Instant::now();
            let table = enumerate_lines(build_field(3, 1).unwrap()).unwrap();
            let g = build_skew_graph(&table);
            println!("build: {:?}", t0.elapsed());
            let t1 = Instant::now();
            let c = clique::census(&g);
            println!("serial census: {:?} -> {:?} total {}", t1.elapsed(), c.histogram, c.total);
        }
        "census3par" => {
            let table = enumerate_lines(build_field(3, 1).unwrap()).unwrap();
            let g = build_skew_graph(&table);
            let n = g.n();
            let t1 = Instant::now();
            let c = clique::census_from(
                &g,
                &skewlines_core::VertexSet::empty(n),
                &skewlines_core::VertexSet::full(n),
                &skewlines_core::VertexSet::empty(n),
                2,
                None,
            )
            .unwrap();
            println!("par census: {:?} -> {:?} total {}", t1.elapsed(), c.histogram, c.total);
        }
        "trans3" => {
            let table = enumerate_lines(build_field(3, 1).unwrap()).unwrap();
            let g = build_skew_graph(&table);
            let gens = perm::builtin_generators(&table).unwrap();
            let t1 = Instant::now();
            let rep = perm::transitivity_check(&gens, &g, initial_triple(3)).unwrap();
            println!(
                "transitivity q=3: {:?} orbit {} of {} -> {}",
                t1.elapsed(),
                rep.orbit_size,
                rep.total_ordered_triples,
                rep.is_transitive()
            );
        }
        "stab3" => {
            let table = enumerate_lines(build_field(3, 1).unwrap()).unwrap();
            let gens = perm::builtin_generators(&table).unwrap();
            let t1 = Instant::now();
            let chain = perm::triple_stabilizer(&gens, initial_triple(3), 10_000_000).unwrap();
            println!(
                "stab q=3: {:?} orbits {:?} stab {}",
                t1.elapsed(),
                chain.levels.iter().map(|l| l.orbit.len()).collect::<Vec<_>>(),
                chain.stabilizer.len()
            );
        }
        "q4" => {
            let t0 = Instant::now();
            let table = enumerate_lines(build_field(2, 2).unwrap()).unwrap();
            println!("table: {:?} ({} lines)", t0.elapsed(), table.len());
            let t1 = Instant::now();
            let stars = skewlines_core::star_points(&table).unwrap();
            println!("stars: {:?} ({} points)", t1.elapsed(), stars.len());
            let t2 = Instant::now();
            let g = build_skew_graph(&table);
            println!("graph: {:?} (degree {})", t2.elapsed(), g.degree(0));
            let t3 = Instant::now();
            let gens = perm::builtin_generators(&table).unwrap();
            println!("gens: {:?} ({})", t3.elapsed(), gens.len());
            let t4 = Instant::now();
            let chain = perm::triple_stabilizer(&gens, initial_triple(4), 10_000_000).unwrap();
            println!(
                "stab q=4: {:?} orbits {:?} stab {}",
                t4.elapsed(),
                chain.levels.iter().map(|l| l.orbit.len()).collect::<Vec<_>>(),
                chain.stabilizer.len()
            );
        }
        "trans4" => {
            let table = enumerate_lines(build_field(2, 2).unwrap()).unwrap();
            let g = build_skew_graph(&table);
            let gens = perm::builtin_generators(&table).unwrap();
            let t1 = Instant::now();
            let rep = perm::transitivity_check(&gens, &g, initial_triple(4)).unwrap();
            println!(
                "transitivity q=4: {:?} orbit {} of {} -> {}",
                t1.elapsed(),
                rep.orbit_size,
                rep.total_ordered_triples,
                rep.is_transitive()
            );
        }
        "orbit" => {
            let q: u64 = std::env::args().nth(2).unwrap().parse().unwrap();
            let (p_, e_) = match q {
                2 => (2, 1),
                3 => (3, 1),
                4 => (2, 2),
                _ => panic!(),
            };
            let table = enumerate_lines(build_field(p_, e_).unwrap()).unwrap();
            let g = build_skew_graph(&table);
            let gens = perm::builtin_generators(&table).unwrap();
            let base = initial_triple(q);
            let chain = perm::triple_stabilizer(&gens, base, 10_000_000).unwrap();
            let n = g.n();
            let r = skewlines_core::VertexSet::from_iter(n, base.iter().map(|&v| v as usize));
            let p = skewlines_core::common_neighbors(&g, &[base[0] as usize, base[1] as usize, base[2] as usize]).unwrap();
            let e = skewlines_core::VertexSet::empty(n);
            let t1 = Instant::now();
            let reps = clique::bk_orbits_collect(&g, &r, &p, &e, &chain.stabilizer, clique::OrbitOptions::default()).unwrap();
            println!("bk_orbits: {:?} reps {}", t1.elapsed(), reps.len());
            let t2 = Instant::now();
            let pivot_cliques = clique::bk_pivot_collect(&g, &r, &p, &e).unwrap();
            println!("bk_pivot containing triple: {:?} cliques {}", t2.elapsed(), pivot_cliques.len());
            let stab_perms: Vec<perm::Permutation> =
                (0..chain.stabilizer.len()).map(|i| chain.stabilizer.to_perm(i)).collect();
            let expanded = clique::expand_orbits(&reps, &stab_perms, 100_000_000).unwrap();
            let direct: std::collections::BTreeSet<Vec<u16>> = pivot_cliques.into_iter().collect();
            println!("expansion == direct: {}", expanded == direct);
        }
        "mm" => {
            let k: usize = std::env::args().nth(2).unwrap().parse().unwrap();
            let gens = clique::moon_moser_generators(k);
            let t1 = Instant::now();
            let group = perm::closure(&gens, 40_000_000).unwrap();
            println!("closure k={k}: {:?} order {}", t1.elapsed(), group.len());
            let g = clique::moon_moser(k);
            let n = g.n();
            let (r, p, e) = (
                skewlines_core::VertexSet::empty(n),
                skewlines_core::VertexSet::full(n),
                skewlines_core::VertexSet::empty(n),
            );
            let t2 = Instant::now();
            let reps = clique::bk_orbits_collect(&g, &r, &p, &e, &group, clique::OrbitOptions::default()).unwrap();
            println!("bk_orbits: {:?} reps {}", t2.elapsed(), reps.len());
            let gen_perms = gens;
            let expanded = clique::expand_orbits(&reps, &gen_perms, 100_000_000).unwrap();
            println!("expanded: {} (expect 3^{k})", expanded.len());
        }
        "orbit4run" => {
            let cap: u64 = std::env::args().nth(2).unwrap().parse().unwrap();
            let table = enumerate_lines(build_field(2, 2).unwrap()).unwrap();
            let g = build_skew_graph(&table);
            let gens = perm::builtin_generators(&table).unwrap();
            let base = initial_triple(4);
            let chain = perm::triple_stabilizer(&gens, base, 10_000_000).unwrap();
            let n = g.n();
            let r = skewlines_core::VertexSet::from_iter(n, base.iter().map(|&v| v as usize));
            let p = skewlines_core::common_neighbors(&g, &[base[0] as usize, base[1] as usize, base[2] as usize]).unwrap();
            let e = skewlines_core::VertexSet::empty(n);
            let t1 = Instant::now();
            let mut hist: std::collections::BTreeMap<usize, u64> = Default::default();
            let mut bad = 0u64;
            let outcome = clique::bk_orbits(
                &g,
                &r,
                &p,
                &e,
                &chain.stabilizer,
                clique::OrbitOptions { pivot_prune: false, max_reps: Some(cap) },
                None,
                &mut |c| {
                    *hist.entry(c.len()).or_insert(0) += 1;
                    if !clique::is_maximal_clique(&g, c) {
                        bad += 1;
                    }
                },
            )
            .unwrap();
            println!(
                "budgeted orbit run: {:?} emitted {} completed {} bad {} hist {:?}",
                t1.elapsed(),
                outcome.emitted,
                outcome.completed,
                bad,
                hist
            );
        }
        "construct4" => {
            use skewlines_core::spread;
            let table = enumerate_lines(build_field(2, 2).unwrap()).unwrap();
            let stars = skewlines_core::star_points(&table).unwrap();
            let g = build_skew_graph(&table);
            let base = initial_triple(4);
            let t1 = Instant::now();
            let cfg = spread::quadric_through(&table, base).unwrap();
            let pairing = spread::star_chords(&table, &stars, &cfg, 1).unwrap();
            let opp = &cfg.rulings[0].surface;
            let triple = [opp[0], opp[1], opp[2]];
            let signs = vec![false; pairing.pairs.len()];
            let set = spread::build_large_skew_set(&table, &g, &cfg, &pairing, triple, &signs).unwrap();
            let ext = spread::extend_to_maximal(&g, &set.lines);
            println!(
                "q=4 construct: {:?} size {} -> {} steps {:?}",
                t1.elapsed(),
                set.lines.len(),
                ext.clique.len(),
                ext.steps
            );
        }
        "construct4all" => {
            use skewlines_core::spread;
            let table = enumerate_lines(build_field(2, 2).unwrap()).unwrap();
            let stars = skewlines_core::star_points(&table).unwrap();
            let g = build_skew_graph(&table);
            let base = initial_triple(4);
            let cfg = spread::quadric_through(&table, base).unwrap();
            let mut step_hist: std::collections::BTreeMap<usize, u64> = Default::default();
            let mut cand_hist: std::collections::BTreeMap<Vec<usize>, u64> = Default::default();
            for ruling in 0..2 {
                let pairing = spread::star_chords(&table, &stars, &cfg, ruling).unwrap();
                let opp = cfg.rulings[1 - ruling].surface.clone();
                let npairs = pairing.pairs.len();
                for i in 0..opp.len() {
                    for j in i + 1..opp.len() {
                        for k in j + 1..opp.len() {
                            let triple = [opp[i], opp[j], opp[k]];
                            for mask in 0u32..(1 << npairs) {
                                let signs: Vec<bool> =
                                    (0..npairs).map(|b| mask >> b & 1 == 1).collect();
                                let set = spread::build_large_skew_set(
                                    &table, &g, &cfg, &pairing, triple, &signs,
                                )
                                .unwrap();
                                let ext = spread::extend_to_maximal(&g, &set.lines);
                                *step_hist.entry(ext.steps.len()).or_insert(0) += 1;
                                *cand_hist
                                    .entry(ext.steps.iter().map(|s| s.len()).collect())
                                    .or_insert(0) += 1;
                            }
                        }
                    }
                }
            }
            println!("extension steps histogram: {:?}", step_hist);
            println!("candidate-count shapes: {:?}", cand_hist);
        }
        "quadcensus3" => {
            use skewlines_core::spread;
            let table = enumerate_lines(build_field(3, 1).unwrap()).unwrap();
            let stars = skewlines_core::star_points(&table).unwrap();
            let g = build_skew_graph(&table);
            let t1 = Instant::now();
            let report = spread::census_from_quadrics(&table, &stars, &g).unwrap();
            println!(
                "q=3 quadric census: {:?} configs {} generated {} distinct {} mult {:?} sizes {:?}",
                t1.elapsed(),
                report.config_count,
                report.generated,
                report.distinct,
                report.multiplicities,
                report.sizes
            );
        }
        other => eprintln!("unknown probe {other:?}"),
    }
}
