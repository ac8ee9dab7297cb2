//! Three-tier site/device/link network with a shared capacity ledger.
//!
//! The network is a forest of trees rooted at cloud sites. Each cloud site
//! fans out to carrier-edge sites, each carrier-edge site to user-edge sites,
//! and each user-edge site hosts a handful of input nodes (the data sources).
//! Only the two inter-tier link types are modeled; the input-node to
//! user-edge hop is free and instantaneous.
//!
//! All capacity bookkeeping lives here. Devices and links track how much of
//! their capacity is committed, and [`Topology::commit`] is the only way to
//! change that, so the ledger invariant (used never exceeds capacity) holds
//! everywhere else by construction.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Placement tier, ordered from the cloud root down toward the data
/// source.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tier {
    Cloud,
    CarrierEdge,
    UserEdge,
}

impl Tier {
    /// The tier a parent site must have, or `None` for cloud roots.
    pub fn parent(self) -> Option<Tier> {
        match self {
            Tier::Cloud => None,
            Tier::CarrierEdge => Some(Tier::Cloud),
            Tier::UserEdge => Some(Tier::CarrierEdge),
        }
    }
}

impl fmt::Display for Tier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Tier::Cloud => "cloud",
            Tier::CarrierEdge => "carrier_edge",
            Tier::UserEdge => "user_edge",
        })
    }
}

/// Kind of compute device a site offers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DeviceKind {
    Cpu,
    Gpu,
    Fpga,
}

impl fmt::Display for DeviceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DeviceKind::Cpu => "cpu",
            DeviceKind::Gpu => "gpu",
            DeviceKind::Fpga => "fpga",
        })
    }
}

macro_rules! id_type {
    ($(#[$doc:meta])* $name:ident) => {
        $(#[$doc])*
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub struct $name(pub usize);

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                self.0.fmt(f)
            }
        }
    };
}

id_type!(
    /// Index of a site within its topology.
    SiteId
);
id_type!(
    /// Index of a device within its topology.
    DeviceId
);
id_type!(
    /// Index of a link within its topology.
    LinkId
);
id_type!(
    /// Index of an input node (data source) within its topology.
    InputNodeId
);

/// One compute device at a site, with its capacity ledger entry.
///
/// `capacity` is in resource units: GB of device RAM for GPUs, percent of
/// the server (0 to 100) for FPGAs, abstract units for CPUs.
/// `month_cost_usd` is the monthly price when the whole capacity is
/// committed; a placement pays pro rata for the share it takes.
#[derive(Debug, Clone, PartialEq)]
pub struct Device {
    pub id: DeviceId,
    pub site_id: SiteId,
    pub kind: DeviceKind,
    pub capacity: f64,
    pub month_cost_usd: f64,
    used: f64,
}

impl Device {
    /// Resource units currently committed.
    pub fn used(&self) -> f64 {
        self.used
    }

    /// Resource units still available.
    pub fn residual(&self) -> f64 {
        self.capacity - self.used
    }

    /// Whether an extra `demand` units would still fit.
    pub fn fits(&self, demand: f64) -> bool {
        self.used + demand <= self.capacity
    }

    /// Monthly price of one resource unit on this device.
    pub fn per_unit_cost(&self) -> f64 {
        self.month_cost_usd / self.capacity
    }
}

/// One inter-tier link, with its bandwidth ledger entry.
///
/// `month_cost_usd` is the monthly price when the whole bandwidth is
/// committed; a placement pays pro rata for the share it reserves.
#[derive(Debug, Clone, PartialEq)]
pub struct Link {
    pub id: LinkId,
    pub child_site_id: SiteId,
    pub parent_site_id: SiteId,
    pub bandwidth_mbps: f64,
    pub month_cost_usd: f64,
    used_mbps: f64,
}

impl Link {
    /// Bandwidth currently reserved, in Mbps.
    pub fn used_mbps(&self) -> f64 {
        self.used_mbps
    }

    /// Bandwidth still available, in Mbps.
    pub fn residual_mbps(&self) -> f64 {
        self.bandwidth_mbps - self.used_mbps
    }

    /// Whether an extra `demand` Mbps would still fit.
    pub fn fits(&self, demand_mbps: f64) -> bool {
        self.used_mbps + demand_mbps <= self.bandwidth_mbps
    }
}

/// One site in the tree: a tier, an optional uplink, and its devices.
#[derive(Debug, Clone, PartialEq)]
pub struct Site {
    pub id: SiteId,
    pub tier: Tier,
    /// Link to the parent site; `None` exactly for cloud roots.
    pub parent_link_id: Option<LinkId>,
    pub device_ids: Vec<DeviceId>,
}

/// The whole network plus its capacity ledger.
///
/// Input node `n` is homed at `input_home[n]`, always a user-edge site.
/// Ids are dense indices minted by [`TopologyBuilder`]; the accessors panic
/// on ids that were never issued for this topology.
#[derive(Debug, Clone, PartialEq)]
pub struct Topology {
    sites: Vec<Site>,
    devices: Vec<Device>,
    links: Vec<Link>,
    input_home: Vec<SiteId>,
}

impl Topology {
    pub fn sites(&self) -> &[Site] {
        &self.sites
    }

    pub fn devices(&self) -> &[Device] {
        &self.devices
    }

    pub fn links(&self) -> &[Link] {
        &self.links
    }

    pub fn site(&self, id: SiteId) -> &Site {
        &self.sites[id.0]
    }

    pub fn device(&self, id: DeviceId) -> &Device {
        &self.devices[id.0]
    }

    pub fn link(&self, id: LinkId) -> &Link {
        &self.links[id.0]
    }

    pub fn input_node_count(&self) -> usize {
        self.input_home.len()
    }

    /// The user-edge site an input node is attached to.
    pub fn home_site(&self, origin: InputNodeId) -> SiteId {
        self.input_home[origin.0]
    }

    /// Tier of the site hosting a device.
    pub fn device_tier(&self, id: DeviceId) -> Tier {
        self.site(self.device(id).site_id).tier
    }

    /// Sites an app arriving at `origin` may be placed on: the home
    /// user-edge site, then each ancestor up to the cloud root.
    pub fn branch_sites(&self, origin: InputNodeId) -> Vec<SiteId> {
        let mut out = Vec::with_capacity(3);
        let mut current = self.home_site(origin);
        loop {
            out.push(current);
            match self.site(current).parent_link_id {
                Some(link) => current = self.link(link).parent_site_id,
                None => return out,
            }
        }
    }

    /// The unique uplink sequence from `origin`'s home site to `target`.
    ///
    /// Empty when `target` is the home site itself. Fails with
    /// [`Error::UnreachableSite`] when `target` is not on the origin's
    /// branch (data only flows upward in the tree).
    pub fn path(&self, origin: InputNodeId, target: SiteId) -> Result<Vec<LinkId>> {
        let mut links = Vec::with_capacity(2);
        let mut current = self.home_site(origin);
        loop {
            if current == target {
                return Ok(links);
            }
            match self.site(current).parent_link_id {
                Some(link_id) => {
                    links.push(link_id);
                    current = self.link(link_id).parent_site_id;
                }
                None => {
                    return Err(Error::UnreachableSite {
                        origin: origin.0,
                        site: target.0,
                    })
                }
            }
        }
    }

    /// Commit a placement to the ledger: `resource_demand` units on the
    /// device and `bandwidth_demand` Mbps on every listed link.
    ///
    /// The operation is atomic. Every capacity is checked first (a link
    /// listed twice is checked for twice the bandwidth), and on any
    /// violation the ledger is left exactly as it was.
    pub fn commit(
        &mut self,
        device_id: DeviceId,
        resource_demand: f64,
        link_ids: &[LinkId],
        bandwidth_demand: f64,
    ) -> Result<()> {
        let valid = |demand: f64| demand >= 0.0 && demand.is_finite();
        if !valid(resource_demand) || !valid(bandwidth_demand) {
            return Err(Error::CapacityViolation(format!(
                "demands must be finite and nonnegative, got resource {resource_demand} and bandwidth {bandwidth_demand}"
            )));
        }

        let device = &self.devices[device_id.0];
        if !device.fits(resource_demand) {
            return Err(Error::CapacityViolation(format!(
                "device {} ({} at site {}): used {} + demand {} exceeds capacity {}",
                device.id,
                device.kind,
                device.site_id,
                device.used,
                resource_demand,
                device.capacity
            )));
        }

        let mut per_link: BTreeMap<LinkId, usize> = BTreeMap::new();
        for id in link_ids {
            *per_link.entry(*id).or_insert(0) += 1;
        }
        for (id, count) in &per_link {
            let link = &self.links[id.0];
            let total = *count as f64 * bandwidth_demand;
            if !link.fits(total) {
                return Err(Error::CapacityViolation(format!(
                    "link {} ({} -> {}): used {} + demand {} exceeds bandwidth {}",
                    link.id,
                    link.child_site_id,
                    link.parent_site_id,
                    link.used_mbps,
                    total,
                    link.bandwidth_mbps
                )));
            }
        }

        self.devices[device_id.0].used += resource_demand;
        for (id, count) in &per_link {
            self.links[id.0].used_mbps += *count as f64 * bandwidth_demand;
        }
        Ok(())
    }

    /// Whether every device and link currently satisfies
    /// `0 <= used <= capacity`.
    pub fn ledger_consistent(&self) -> bool {
        self.devices
            .iter()
            .all(|d| d.used >= 0.0 && d.used <= d.capacity)
            && self
                .links
                .iter()
                .all(|l| l.used_mbps >= 0.0 && l.used_mbps <= l.bandwidth_mbps)
    }
}

/// Incremental [`Topology`] constructor used by scenario loading and by
/// tests that need hand-made networks.
///
/// Ids are handed out densely in insertion order, so a fixed build sequence
/// yields a fixed id assignment.
#[derive(Debug, Default)]
pub struct TopologyBuilder {
    sites: Vec<Site>,
    devices: Vec<Device>,
    links: Vec<Link>,
    input_home: Vec<SiteId>,
}

impl TopologyBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_site(&mut self, tier: Tier) -> SiteId {
        let id = SiteId(self.sites.len());
        self.sites.push(Site {
            id,
            tier,
            parent_link_id: None,
            device_ids: Vec::new(),
        });
        id
    }

    pub fn add_device(
        &mut self,
        site: SiteId,
        kind: DeviceKind,
        capacity: f64,
        month_cost_usd: f64,
    ) -> Result<DeviceId> {
        if site.0 >= self.sites.len() {
            return Err(Error::InvalidScenario(format!("no such site {site}")));
        }
        if capacity <= 0.0 || !capacity.is_finite() {
            return Err(Error::InvalidScenario(format!(
                "device capacity must be positive and finite, got {capacity}"
            )));
        }
        if month_cost_usd < 0.0 || !month_cost_usd.is_finite() {
            return Err(Error::InvalidScenario(format!(
                "device monthly cost must be nonnegative and finite, got {month_cost_usd}"
            )));
        }
        let id = DeviceId(self.devices.len());
        self.devices.push(Device {
            id,
            site_id: site,
            kind,
            capacity,
            month_cost_usd,
            used: 0.0,
        });
        self.sites[site.0].device_ids.push(id);
        Ok(id)
    }

    /// Attach `child` under `parent` with a new link. Tiers must be
    /// adjacent (user edge under carrier edge, carrier edge under cloud)
    /// and a site can have only one parent.
    pub fn connect(
        &mut self,
        child: SiteId,
        parent: SiteId,
        bandwidth_mbps: f64,
        month_cost_usd: f64,
    ) -> Result<LinkId> {
        if child.0 >= self.sites.len() || parent.0 >= self.sites.len() {
            return Err(Error::InvalidScenario(format!(
                "connect refers to unknown site ({child} or {parent})"
            )));
        }
        let child_tier = self.sites[child.0].tier;
        let parent_tier = self.sites[parent.0].tier;
        if child_tier.parent() != Some(parent_tier) {
            return Err(Error::InvalidScenario(format!(
                "cannot link a {child_tier} site under a {parent_tier} site, tiers must be adjacent"
            )));
        }
        if self.sites[child.0].parent_link_id.is_some() {
            return Err(Error::InvalidScenario(format!(
                "site {child} already has a parent link"
            )));
        }
        if bandwidth_mbps <= 0.0 || !bandwidth_mbps.is_finite() {
            return Err(Error::InvalidScenario(format!(
                "link bandwidth must be positive and finite, got {bandwidth_mbps}"
            )));
        }
        if month_cost_usd < 0.0 || !month_cost_usd.is_finite() {
            return Err(Error::InvalidScenario(format!(
                "link monthly cost must be nonnegative and finite, got {month_cost_usd}"
            )));
        }
        let id = LinkId(self.links.len());
        self.links.push(Link {
            id,
            child_site_id: child,
            parent_site_id: parent,
            bandwidth_mbps,
            month_cost_usd,
            used_mbps: 0.0,
        });
        self.sites[child.0].parent_link_id = Some(id);
        Ok(id)
    }

    /// Attach an input node to its home user-edge site.
    pub fn add_input_node(&mut self, home: SiteId) -> Result<InputNodeId> {
        if home.0 >= self.sites.len() {
            return Err(Error::InvalidScenario(format!("no such site {home}")));
        }
        if self.sites[home.0].tier != Tier::UserEdge {
            return Err(Error::InvalidScenario(format!(
                "input nodes attach to user-edge sites, site {home} is {}",
                self.sites[home.0].tier
            )));
        }
        let id = InputNodeId(self.input_home.len());
        self.input_home.push(home);
        Ok(id)
    }

    /// Finish construction, checking the tree property.
    pub fn build(self) -> Result<Topology> {
        for site in &self.sites {
            if site.tier != Tier::Cloud && site.parent_link_id.is_none() {
                return Err(Error::InvalidScenario(format!(
                    "{} site {} has no parent link",
                    site.tier, site.id
                )));
            }
        }
        Ok(Topology {
            sites: self.sites,
            devices: self.devices,
            links: self.links,
            input_home: self.input_home,
        })
    }
}

/// Build the built-in evaluation network: 5 cloud sites, each with 4
/// carrier-edge children, each with 3 user-edge children, each serving 5
/// input nodes, stocked and priced per [`crate::scenario::Scenario::builtin_default`].
pub fn build_default_scenario() -> Topology {
    crate::scenario::Scenario::builtin_default()
        .build_topology()
        .expect("built-in scenario is valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// A single branch: one cloud, one carrier-edge, one user-edge site,
    /// one GPU per site, default link sizing.
    fn mini_branch() -> (Topology, InputNodeId, [DeviceId; 3], [LinkId; 2]) {
        let mut b = TopologyBuilder::new();
        let cloud = b.add_site(Tier::Cloud);
        let carrier = b.add_site(Tier::CarrierEdge);
        let user = b.add_site(Tier::UserEdge);
        let d_cloud = b.add_device(cloud, DeviceKind::Gpu, 16.0, 1000.0).unwrap();
        let d_carrier = b.add_device(carrier, DeviceKind::Gpu, 8.0, 625.0).unwrap();
        let d_user = b.add_device(user, DeviceKind::Gpu, 4.0, 375.0).unwrap();
        let l_up = b.connect(carrier, cloud, 100.0, 80.0).unwrap();
        let l_down = b.connect(user, carrier, 30.0, 50.0).unwrap();
        let origin = b.add_input_node(user).unwrap();
        let topo = b.build().unwrap();
        (topo, origin, [d_user, d_carrier, d_cloud], [l_down, l_up])
    }

    #[test]
    fn default_scenario_shape() {
        let topo = build_default_scenario();
        assert_eq!(topo.sites().len(), 85);
        assert_eq!(topo.input_node_count(), 300);
        assert_eq!(topo.links().len(), 80);
        assert_eq!(topo.devices().len(), 390);

        let count_tier = |tier| topo.sites().iter().filter(|s| s.tier == tier).count();
        assert_eq!(count_tier(Tier::Cloud), 5);
        assert_eq!(count_tier(Tier::CarrierEdge), 20);
        assert_eq!(count_tier(Tier::UserEdge), 60);

        let total_cloud_gpu: f64 = topo
            .devices()
            .iter()
            .filter(|d| d.kind == DeviceKind::Gpu && topo.device_tier(d.id) == Tier::Cloud)
            .map(|d| d.capacity)
            .sum();
        assert_eq!(total_cloud_gpu, 320.0);
    }

    #[test]
    fn default_scenario_inventory_and_prices() {
        let topo = build_default_scenario();
        let per_site = |tier, kind| {
            let site = topo.sites().iter().find(|s| s.tier == tier).unwrap();
            site.device_ids
                .iter()
                .filter(|d| topo.device(**d).kind == kind)
                .count()
        };
        assert_eq!(per_site(Tier::Cloud, DeviceKind::Cpu), 8);
        assert_eq!(per_site(Tier::Cloud, DeviceKind::Gpu), 4);
        assert_eq!(per_site(Tier::Cloud, DeviceKind::Fpga), 2);
        assert_eq!(per_site(Tier::CarrierEdge, DeviceKind::Cpu), 4);
        assert_eq!(per_site(Tier::CarrierEdge, DeviceKind::Gpu), 2);
        assert_eq!(per_site(Tier::CarrierEdge, DeviceKind::Fpga), 1);
        assert_eq!(per_site(Tier::UserEdge, DeviceKind::Cpu), 2);
        assert_eq!(per_site(Tier::UserEdge, DeviceKind::Gpu), 1);
        assert_eq!(per_site(Tier::UserEdge, DeviceKind::Fpga), 0);

        let probe = |tier, kind| {
            let d = topo
                .devices()
                .iter()
                .find(|d| d.kind == kind && topo.device_tier(d.id) == tier)
                .unwrap();
            (d.capacity, d.month_cost_usd)
        };
        assert_eq!(probe(Tier::Cloud, DeviceKind::Gpu), (16.0, 1000.0));
        assert_eq!(probe(Tier::Cloud, DeviceKind::Fpga), (100.0, 1200.0));
        assert_eq!(probe(Tier::Cloud, DeviceKind::Cpu), (8.0, 500.0));
        assert_eq!(probe(Tier::CarrierEdge, DeviceKind::Gpu), (8.0, 625.0));
        assert_eq!(probe(Tier::CarrierEdge, DeviceKind::Fpga), (100.0, 1500.0));
        assert_eq!(probe(Tier::UserEdge, DeviceKind::Gpu), (4.0, 375.0));

        for link in topo.links() {
            let child_tier = topo.site(link.child_site_id).tier;
            match child_tier {
                Tier::CarrierEdge => {
                    assert_eq!((link.bandwidth_mbps, link.month_cost_usd), (100.0, 80.0))
                }
                Tier::UserEdge => {
                    assert_eq!((link.bandwidth_mbps, link.month_cost_usd), (30.0, 50.0))
                }
                Tier::Cloud => panic!("cloud site cannot be a link child"),
            }
        }
    }

    #[test]
    fn paths_follow_the_branch() {
        let topo = build_default_scenario();
        let origin = InputNodeId(0);
        let home = topo.home_site(origin);
        assert_eq!(topo.site(home).tier, Tier::UserEdge);

        assert_eq!(topo.path(origin, home).unwrap(), vec![]);

        let branch = topo.branch_sites(origin);
        assert_eq!(branch.len(), 3);
        assert_eq!(topo.site(branch[1]).tier, Tier::CarrierEdge);
        assert_eq!(topo.site(branch[2]).tier, Tier::Cloud);
        assert_eq!(topo.path(origin, branch[1]).unwrap().len(), 1);
        assert_eq!(topo.path(origin, branch[2]).unwrap().len(), 2);

        let foreign_user = topo
            .sites()
            .iter()
            .find(|s| s.tier == Tier::UserEdge && s.id != home)
            .unwrap()
            .id;
        assert!(matches!(
            topo.path(origin, foreign_user),
            Err(Error::UnreachableSite { .. })
        ));
    }

    #[test]
    fn every_branch_is_unique_and_two_links_deep() {
        let topo = build_default_scenario();
        for n in 0..topo.input_node_count() {
            let origin = InputNodeId(n);
            let branch = topo.branch_sites(origin);
            assert_eq!(branch.len(), 3);
            for (distance, site) in branch.iter().enumerate() {
                assert_eq!(topo.path(origin, *site).unwrap().len(), distance);
            }
        }
    }

    #[test]
    fn commit_fills_to_the_exact_boundary() {
        let (mut topo, _, [_, _, d_cloud], _) = mini_branch();
        topo.commit(d_cloud, 15.0, &[], 0.0).unwrap();
        topo.commit(d_cloud, 1.0, &[], 0.0).unwrap();
        assert_eq!(topo.device(d_cloud).used(), 16.0);
        assert_eq!(topo.device(d_cloud).residual(), 0.0);
    }

    #[test]
    fn commit_over_capacity_is_rejected_and_changes_nothing() {
        let (mut topo, _, [_, _, d_cloud], _) = mini_branch();
        topo.commit(d_cloud, 15.5, &[], 0.0).unwrap();
        let before = topo.clone();
        let err = topo.commit(d_cloud, 1.0, &[], 0.0).unwrap_err();
        assert!(matches!(err, Error::CapacityViolation(_)));
        assert_eq!(topo, before);
    }

    #[test]
    fn commit_fills_a_link_to_the_boundary() {
        let (mut topo, _, [_, d_carrier, _], [l_down, _]) = mini_branch();
        topo.commit(d_carrier, 1.0, &[l_down], 28.0).unwrap();
        topo.commit(d_carrier, 1.0, &[l_down], 2.0).unwrap();
        assert_eq!(topo.link(l_down).used_mbps(), 30.0);
    }

    #[test]
    fn failed_link_commit_rolls_back_the_device_too() {
        let (mut topo, _, [_, _, d_cloud], [l_down, l_up]) = mini_branch();
        topo.commit(d_cloud, 1.0, &[l_down, l_up], 29.0).unwrap();
        let before = topo.clone();
        // The device has room but the user-edge link does not.
        let err = topo.commit(d_cloud, 1.0, &[l_down, l_up], 2.0).unwrap_err();
        assert!(matches!(err, Error::CapacityViolation(_)));
        assert_eq!(topo, before);
    }

    #[test]
    fn duplicate_link_ids_are_charged_cumulatively() {
        let (mut topo, _, [_, d_carrier, _], [l_down, _]) = mini_branch();
        let before = topo.clone();
        let err = topo
            .commit(d_carrier, 1.0, &[l_down, l_down], 16.0)
            .unwrap_err();
        assert!(matches!(err, Error::CapacityViolation(_)));
        assert_eq!(topo, before);

        topo.commit(d_carrier, 1.0, &[l_down, l_down], 15.0)
            .unwrap();
        assert_eq!(topo.link(l_down).used_mbps(), 30.0);
    }

    #[test]
    fn negative_demand_is_rejected() {
        let (mut topo, _, [d_user, _, _], _) = mini_branch();
        assert!(topo.commit(d_user, -1.0, &[], 0.0).is_err());
        assert!(topo.commit(d_user, 1.0, &[], f64::NAN).is_err());
        assert!(topo.ledger_consistent());
    }

    #[test]
    fn random_commit_sequences_keep_the_ledger_safe() {
        let mut topo = build_default_scenario();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..1000 {
            let origin = InputNodeId(rng.gen_range(0..topo.input_node_count()));
            let branch = topo.branch_sites(origin);
            let site = branch[rng.gen_range(0..branch.len())];
            let devices = &topo.site(site).device_ids;
            let device = devices[rng.gen_range(0..devices.len())];
            let links = topo.path(origin, site).unwrap();
            let demand = rng.gen_range(0.0..6.0);
            let bandwidth = rng.gen_range(0.0..4.0);

            let before = topo.clone();
            match topo.commit(device, demand, &links, bandwidth) {
                Ok(()) => assert!(topo.ledger_consistent()),
                Err(_) => assert_eq!(topo, before, "failed commit must be a no-op"),
            }
        }
    }

    #[test]
    fn builder_rejects_malformed_trees() {
        let mut b = TopologyBuilder::new();
        let cloud = b.add_site(Tier::Cloud);
        let user = b.add_site(Tier::UserEdge);
        assert!(b.connect(user, cloud, 30.0, 50.0).is_err());
        assert!(b.add_input_node(cloud).is_err());
        assert!(b
            .add_device(SiteId(9), DeviceKind::Cpu, 8.0, 500.0)
            .is_err());
        assert!(b.add_device(user, DeviceKind::Cpu, 0.0, 500.0).is_err());
        // The dangling user-edge site still has no parent.
        assert!(b.build().is_err());
    }

    #[test]
    fn builder_rejects_double_parents() {
        let mut b = TopologyBuilder::new();
        let cloud_a = b.add_site(Tier::Cloud);
        let cloud_b = b.add_site(Tier::Cloud);
        let carrier = b.add_site(Tier::CarrierEdge);
        b.connect(carrier, cloud_a, 100.0, 80.0).unwrap();
        assert!(b.connect(carrier, cloud_b, 100.0, 80.0).is_err());
    }
}
