//! Edit a scenario, save it, reload it, and see the behavior change.
//!
//! Scenarios are plain JSON: tree fan-outs, per-tier device inventories and
//! price multipliers, link sizing, and the app catalog with its requirement
//! menus. This example starts from the built-in default, squeezes the
//! carrier-to-cloud links down until the cloud is effectively unreachable
//! for offload traffic, then compares a cost-capped run on both scenarios.
//! The file round trip goes through the same loader the command line uses.
//!
//! ```bash
//! cargo run --example custom_scenario
//! ```

use placesim::{generate_requests, run, RequestPattern, RunMeta, Scenario, Tier};

fn summarize(scenario: &Scenario) -> (usize, f64) {
    let requests = generate_requests(RequestPattern::P2, 400, 7, scenario);
    let mut topo = scenario.build_topology().expect("scenario builds");
    let meta = RunMeta {
        seed: 7,
        pattern: RequestPattern::P2,
        scenario_name: scenario.name.clone(),
        scenario_hash: scenario.sha256_hex(),
    };
    let result = run(&mut topo, &requests, meta);
    let cloud_placements = result
        .records
        .iter()
        .filter(|r| r.tier == Some(Tier::Cloud))
        .count();
    let final_price = *result.running_avg_price.last().expect("something placed");
    (cloud_placements, final_price)
}

fn main() -> anyhow::Result<()> {
    let default = Scenario::builtin_default();

    let mut starved = default.clone();
    starved.name = "starved-uplinks".to_string();
    // Half a megabit is below what either stock app streams, so no offload
    // can reach a cloud site at all and every placement lands at the edges.
    starved.links.carrier_to_cloud.bandwidth_mbps = 0.5;

    // Round trip through disk, exactly like `--scenario FILE`.
    let dir = std::env::temp_dir().join("placesim_scenario_demo");
    std::fs::create_dir_all(&dir)?;
    let path = dir.join("starved.json");
    starved.save(&path)?;
    let reloaded = Scenario::from_path(&path)?;
    assert_eq!(reloaded.sha256_hex(), starved.sha256_hex());
    println!("wrote and reloaded {}", path.display());
    println!("scenario hash: {}", reloaded.sha256_hex());
    println!();

    let (cloud_default, price_default) = summarize(&default);
    let (cloud_starved, price_starved) = summarize(&reloaded);

    println!("same 400 cost-capped requests, seed 7:");
    println!(
        "  {:<16} {:>4} cloud placements, final avg {:.2} USD/month",
        default.name, cloud_default, price_default
    );
    println!(
        "  {:<16} {:>4} cloud placements, final avg {:.2} USD/month",
        reloaded.name, cloud_starved, price_starved
    );
    println!();
    println!("with the uplinks starved, cost-capped requests that would have");
    println!("gone to cheap cloud devices land on pricier edge hardware instead.");
    Ok(())
}
