use edd_core::graph::sample;
use edd_core::{edd_a, edd_nste, greedy_connectivity, random_distribution, solve_exact};

fn main() {
    let inst = sample::ten_server_instance();
    println!("exact  {:?}", solve_exact(&inst, None).unwrap().solution);
    println!("nste   {:?}", edd_nste(&inst).unwrap());
    println!("greedy {:?}", greedy_connectivity(&inst, 0).unwrap());
    println!("edd-a  {:?}", edd_a(&inst).unwrap());
    let costs: Vec<u64> = (0..100).map(|s| random_distribution(&inst, s).unwrap().total_cost).collect();
    println!("random mean {}", costs.iter().sum::<u64>() as f64 / 100.0);
}
