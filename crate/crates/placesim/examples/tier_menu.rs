//! Price and response time of each tier, against the requirement menus.
//!
//! On an empty topology every device of the right kind at a given tier is
//! interchangeable, so each application has exactly one (price, response)
//! point per tier it can run on. This example prints those points and then
//! checks them against the cost and response caps that the request generator
//! draws from, showing which caps force which tiers.
//!
//! ```bash
//! cargo run --example tier_menu
//! ```

use placesim::{
    build_default_scenario, enumerate_candidates, PlacementRequest, Requirement, Scenario, Tier,
};
use std::collections::BTreeMap;
use std::sync::Arc;

fn main() {
    let scenario = Scenario::builtin_default();
    let topo = build_default_scenario();

    for app in &scenario.apps {
        let profile = Arc::new(app.profile.clone());
        println!("{}:", profile.name);

        // One probe request from input node 0. The ladder is irrelevant for
        // enumeration, so any valid requirement will do.
        let request = PlacementRequest::new(
            0,
            profile.clone(),
            placesim::InputNodeId(0),
            vec![Requirement::CostCap(f64::MAX)],
        )
        .expect("probe request is valid");

        let candidates = enumerate_candidates(&request, &topo);

        // Group by tier. On a fresh topology all candidates at one tier share
        // the same price and response, so keep one representative per tier.
        let mut per_tier: BTreeMap<String, (Tier, f64, f64, usize)> = BTreeMap::new();
        for c in &candidates {
            let tier = topo.device_tier(c.device_id);
            let entry = per_tier.entry(tier.to_string()).or_insert((
                tier,
                c.price_usd_month,
                c.response_s,
                0,
            ));
            entry.3 += 1;
        }

        let mut tiers: Vec<_> = per_tier.values().collect();
        tiers.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap());
        for (tier, price, response, count) in &tiers {
            println!("  {tier}: {price:.2} USD/month, {response:.1} s ({count} devices)");
        }

        // Which tiers survive each cap from the generator's menu?
        let menu = &app.menu;
        for cap in &menu.cost_caps_usd {
            let ok: Vec<String> = tiers
                .iter()
                .filter(|(_, price, _, _)| *price <= *cap)
                .map(|(tier, _, _, _)| tier.to_string())
                .collect();
            println!("  cost cap {cap:>6.2} USD/month allows: {}", ok.join(", "));
        }
        for cap in &menu.response_caps_s {
            let ok: Vec<String> = tiers
                .iter()
                .filter(|(_, _, response, _)| *response <= *cap)
                .map(|(tier, _, _, _)| tier.to_string())
                .collect();
            println!("  response cap {cap:>4.1} s allows: {}", ok.join(", "));
        }
        println!();
    }
}
