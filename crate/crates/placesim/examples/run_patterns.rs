//! Run the three request patterns and compare their cost and latency curves.
//!
//! Generates 800 requests per pattern from one seed, so the application and
//! origin of request k are identical across patterns and only the attached
//! requirements differ. Pattern p1 draws a single random requirement per
//! request, p2 attaches the full cost-cap ladder, and p3 the full
//! response-cap ladder. Prints the running averages at a few checkpoints and
//! the point where p2 first leaves the cloud.
//!
//! ```bash
//! cargo run --example run_patterns
//! ```

use placesim::{generate_requests, run, RequestPattern, RunMeta, Scenario, Tier};

fn main() {
    let scenario = Scenario::builtin_default();
    let hash = scenario.sha256_hex();
    let seed = 1;
    let count = 800;

    println!("seed {seed}, {count} requests per pattern");
    println!();

    for pattern in RequestPattern::ALL {
        let requests = generate_requests(pattern, count, seed, &scenario);
        let mut topo = scenario.build_topology().expect("default scenario builds");
        let meta = RunMeta {
            seed,
            pattern,
            scenario_name: scenario.name.clone(),
            scenario_hash: hash.clone(),
        };
        let result = run(&mut topo, &requests, meta);

        println!(
            "{pattern}: {} placed, {} rejected",
            result.placed_count(),
            result.rejection_count
        );
        for checkpoint in [100, 300, result.placed_count()] {
            println!(
                "  after {checkpoint:>3} placements: avg {:>7.2} USD/month, avg {:.2} s",
                result.running_avg_price[checkpoint - 1],
                result.running_avg_response[checkpoint - 1]
            );
        }

        // With cost-cap ladders the solver prefers the cheapest tier that
        // still has room, so placements stay in the cloud until its GPUs and
        // FPGAs saturate. Report when that happens.
        if pattern == RequestPattern::P2 {
            let first_non_cloud = result
                .records
                .iter()
                .filter(|r| r.tier.is_some())
                .position(|r| r.tier != Some(Tier::Cloud));
            match first_non_cloud {
                Some(i) => println!("  first non-cloud placement: number {}", i + 1),
                None => println!("  every placement stayed in the cloud"),
            }
        }
        println!();
    }
}
