use edd_core::exact::{solve_branch_and_bound, solve_subset_dp};
use edd_core::{
    all_pairs_shortest, approximate_steiner, brute_force_oracle, build_model, edd_a, edd_nste, expand_hops,
    generate, greedy_connectivity, random_distribution, solve_exact, validate_solution, EddInstance,
    GeneratorConfig, Node, Topology, Weight,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Random small instance with slack between 0 and 60% of gamma.
fn instance(seed: u64, max_n: usize, max_dest: usize) -> EddInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(2..=max_n);
    let full = n * (n - 1) / 2;
    let m = rng.gen_range(n - 1..=full);
    let r = rng.gen_range(1..=max_dest.min(n));
    let gamma = rng.gen_range(10..=40);
    let cfg = GeneratorConfig {
        n,
        delta: m as f64 / n as f64,
        rho: r as f64 / n as f64,
        weight_min: 1,
        weight_max: rng.gen_range(1..=15),
        gamma,
        l_limit: gamma + rng.gen_range(0..=gamma * 3 / 5),
        seed,
    };
    generate(&cfg).unwrap()
}

#[test]
fn exact_engines_agree_with_the_oracle() {
    for seed in 0..250 {
        let inst = instance(seed, 8, 5);
        let oracle = brute_force_oracle(&inst).unwrap();
        let dp = solve_subset_dp(&inst).unwrap();
        let bnb = solve_branch_and_bound(&inst, u64::MAX).unwrap();
        assert!(bnb.proven_optimal);
        assert_eq!(dp.solution.total_cost, oracle, "dp seed {seed}");
        assert_eq!(bnb.solution.total_cost, oracle, "bnb seed {seed}");
        for sol in [&dp.solution, &bnb.solution] {
            assert!(validate_solution(&inst, sol).is_feasible(), "seed {seed}");
        }
    }
}

#[test]
fn exact_depths_satisfy_the_model() {
    for seed in 0..100 {
        let inst = instance(seed, 8, 5);
        let sol = solve_exact(&inst, None).unwrap().solution;
        let model = build_model(&inst);
        let x = model.assignment(&sol);
        assert!(model.violations(&x).is_empty(), "seed {seed}");
        assert_eq!(model.objective_value(&x), sol.total_cost as i64);
    }
}

#[test]
fn optimum_never_grows_with_the_limit() {
    for seed in 0..60 {
        let inst = instance(seed, 8, 5);
        let g = inst.gamma();
        let mut last = Weight::MAX;
        for extra in 0..=8 {
            let cost = solve_exact(&inst.with_limits(g, g + extra * 3).unwrap(), None).unwrap().solution.total_cost;
            assert!(cost <= last, "seed {seed}");
            assert!(cost <= g * inst.destinations().len() as Weight);
            last = cost;
        }
    }
}

#[test]
fn heuristics_are_feasible_and_bounded_below() {
    for seed in 0..300 {
        let inst = instance(seed, 8, 5);
        let best = solve_exact(&inst, None).unwrap().solution.total_cost;
        let k = inst.slack();
        let plans = [
            ("nste", edd_nste(&inst).unwrap()),
            ("greedy", greedy_connectivity(&inst, seed).unwrap()),
            ("random", random_distribution(&inst, seed).unwrap()),
            ("edd-a", edd_a(&inst).unwrap()),
        ];
        for (name, sol) in &plans {
            let report = validate_solution(&inst, sol);
            assert!(report.is_feasible(), "{name} seed {seed}: {:?}", report.violations);
            assert!(sol.total_cost >= best, "{name} seed {seed}");
        }
        if k > 0 {
            let cap = 11.0 / 6.0 * (2.0 * inst.gamma() as f64 / k as f64 + 1.0) * best as f64;
            assert!(plans[0].1.total_cost as f64 <= cap, "seed {seed}");
        }
    }
}

#[test]
fn no_slack_means_direct_feeds() {
    for seed in 0..50 {
        let inst = instance(seed, 12, 8);
        let inst = inst.with_limits(inst.gamma(), inst.gamma()).unwrap();
        let direct = inst.gamma() * inst.destinations().len() as Weight;
        assert_eq!(solve_exact(&inst, None).unwrap().solution.total_cost, direct);
        assert_eq!(edd_nste(&inst).unwrap().total_cost, direct);
        assert_eq!(greedy_connectivity(&inst, 0).unwrap().total_cost, direct);
        assert_eq!(random_distribution(&inst, seed).unwrap().total_cost, direct);
        assert_eq!(edd_a(&inst).unwrap().total_cost, direct);
    }
}

/// Optimal Steiner weight: best MST of the closure over terminals plus any
/// subset of the other nodes.
fn steiner_optimum(inst: &EddInstance) -> Weight {
    let mc = all_pairs_shortest(inst.network()).unwrap();
    let others: Vec<Node> = inst.network().nodes().filter(|&v| !inst.is_destination(v)).collect();
    let mut best = Weight::MAX;
    for mask in 0u32..(1 << others.len()) {
        let mut verts: Vec<Node> = inst.destinations().to_vec();
        verts.extend(others.iter().enumerate().filter(|(i, _)| mask & (1 << i) != 0).map(|(_, &v)| v));
        let t = edd_core::minimum_spanning_tree(&verts, |a, b| Some(mc.dist(a, b))).unwrap();
        best = best.min(t.total);
    }
    best
}

#[test]
fn steiner_within_eleven_sixths() {
    for seed in 0..120 {
        let inst = instance(seed, 9, 5);
        let mc = all_pairs_shortest(inst.network()).unwrap();
        let st = approximate_steiner(&inst, &mc).unwrap();
        let opt = steiner_optimum(&inst);
        assert!(st.total_weight >= opt, "seed {seed}");
        assert!(6 * st.total_weight <= 11 * opt, "seed {seed}: {} vs {opt}", st.total_weight);
        for &(a, b, w) in &st.edges {
            assert_eq!(inst.network().weight(a, b), Some(w));
        }
        assert!(inst.destinations().iter().all(|r| st.vertices.contains(r)));
    }
}

#[test]
fn expansion_preserves_distances() {
    for seed in 0..60 {
        let inst = instance(seed, 10, 3);
        let g = expand_hops(inst.network());
        let coarse = all_pairs_shortest(inst.network()).unwrap();
        let fine = all_pairs_shortest(&g).unwrap();
        let n = inst.node_count();
        for u in 1..=n {
            for v in 1..=n {
                assert_eq!(fine.dist(u, v), coarse.dist(u, v));
            }
        }
        assert!(g.neighbors(1).iter().all(|&(_, w)| w == 1));
    }
}

#[test]
fn random_costs_at_least_greedy_on_average() {
    let inst = edd_core::graph::sample::ten_server_instance();
    let greedy = greedy_connectivity(&inst, 0).unwrap().total_cost;
    let total: Weight = (0..100).map(|s| random_distribution(&inst, s).unwrap().total_cost).sum();
    assert!(total >= greedy * 100);
}
