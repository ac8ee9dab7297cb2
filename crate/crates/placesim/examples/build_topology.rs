//! Walk through the default three-tier topology.
//!
//! Builds the stock scenario (5 cloud sites, 4 carrier-edge sites per cloud,
//! 3 user-edge sites per carrier, 5 input nodes per user site), then prints
//! what came out: site and device counts per tier, the hardware inventory and
//! monthly prices at one site of each tier, and the uplink path from an input
//! node back to its cloud root.
//!
//! ```bash
//! cargo run --example build_topology
//! ```

use placesim::{build_default_scenario, DeviceKind, Tier};

fn main() {
    let topo = build_default_scenario();

    println!("sites: {}", topo.sites().len());
    println!("devices: {}", topo.devices().len());
    println!("links: {}", topo.links().len());
    println!("input nodes: {}", topo.input_node_count());
    println!();

    // Tally sites and devices by tier.
    for tier in [Tier::Cloud, Tier::CarrierEdge, Tier::UserEdge] {
        let sites = topo.sites().iter().filter(|s| s.tier == tier).count();
        let devices = topo
            .devices()
            .iter()
            .filter(|d| topo.site(d.site_id).tier == tier)
            .count();
        println!("{tier}: {sites} sites, {devices} devices");
    }
    println!();

    // Show the inventory at the first site of each tier. Sites are created
    // depth first, so site 0 is a cloud root, site 1 its first carrier, and
    // site 2 the first user-edge site under that carrier.
    for site_id in [0, 1, 2] {
        let site = topo.site(placesim::SiteId(site_id));
        println!("site {} ({}):", site.id, site.tier);
        for kind in [DeviceKind::Cpu, DeviceKind::Gpu, DeviceKind::Fpga] {
            let of_kind: Vec<_> = site
                .device_ids
                .iter()
                .map(|id| topo.device(*id))
                .filter(|d| d.kind == kind)
                .collect();
            if of_kind.is_empty() {
                println!("  {kind}: none");
                continue;
            }
            let d = of_kind[0];
            println!(
                "  {kind}: {} units, capacity {} each, {:.2} USD/month each",
                of_kind.len(),
                d.capacity,
                d.month_cost_usd
            );
        }
        if let Some(link_id) = site.parent_link_id {
            let link = topo.link(link_id);
            println!(
                "  uplink: link {} to site {}, {} Mbps, {:.2} USD/month",
                link.id, link.parent_site_id, link.bandwidth_mbps, link.month_cost_usd
            );
        }
        println!();
    }

    // Input nodes attach to user-edge sites. Walking the path from an input
    // node's home site up to any ancestor yields the links a placement there
    // would have to cross.
    let origin = placesim::InputNodeId(0);
    let home = topo.home_site(origin);
    println!("input node {origin} lives at site {home}");
    for site in topo.branch_sites(origin) {
        let path = topo.path(origin, site).expect("branch sites are reachable");
        let hops: Vec<String> = path.iter().map(|l| format!("link {}", l)).collect();
        let tier = topo.site(site).tier;
        println!(
            "  to site {site} ({tier}): {}",
            if hops.is_empty() {
                "no links".to_string()
            } else {
                hops.join(" -> ")
            }
        );
    }
}
