//! Simplified travel logistics: planes fly between cities, passengers board
//! and debark. Flying is expensive, moving passengers is cheap.

use std::collections::BTreeMap;
use std::fmt;

use crate::problem::{Cost, Edge, Heuristics, ModelError, Problem};

pub const DEFAULT_FLY_COST: Cost = 10_000;
pub const RENDEZVOUS_DIAGONAL_COST: Cost = 7_000;
pub const RENDEZVOUS_EXTERIOR_COST: Cost = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TravelAction {
    Board { passenger: u8, plane: u8 },
    Debark { passenger: u8, plane: u8 },
    Fly { plane: u8, from: u8, to: u8 },
}

impl fmt::Display for TravelAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            TravelAction::Board { passenger, plane } => write!(f, "board(p{},plane{})", passenger + 1, plane + 1),
            TravelAction::Debark { passenger, plane } => write!(f, "debark(p{},plane{})", passenger + 1, plane + 1),
            TravelAction::Fly { plane, from, to } => write!(f, "fly(plane{},{from},{to})", plane + 1),
        }
    }
}

/// Plane positions followed by passenger locations. A passenger location
/// below the city count is a city; otherwise it is plane `loc - cities`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TravelState(Box<[u8]>);

impl TravelState {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }
}

impl fmt::Debug for TravelState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TravelState{:?}", self.0)
    }
}

/// Where a passenger is.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Location {
    City(u8),
    InPlane(u8),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Passenger {
    pub origin: u8,
    pub destination: u8,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TravelInstance {
    pub name: String,
    pub cities: Vec<String>,
    /// Undirected flight connections `(a, b, cost)`.
    pub roads: Vec<(u8, u8, Cost)>,
    pub planes: Vec<u8>,
    pub passengers: Vec<Passenger>,
    pub board_cost: Cost,
    pub debark_cost: Cost,
    adjacency: Vec<Vec<(u8, Cost)>>,
    /// Cheapest flight cost between cities.
    dist: Vec<Vec<Cost>>,
    /// Fewest flights between cities.
    hops: Vec<Vec<u64>>,
    /// Flights along a cheapest route (fewest among the cheapest).
    cheap_hops: Vec<Vec<u64>>,
}

const UNREACHABLE: Cost = Cost::MAX / 4;

impl TravelInstance {
    pub fn new(
        name: impl Into<String>,
        cities: Vec<String>,
        roads: Vec<(u8, u8, Cost)>,
        planes: Vec<u8>,
        passengers: Vec<Passenger>,
        board_cost: Cost,
        debark_cost: Cost,
    ) -> Result<Self, ModelError> {
        let n = cities.len();
        let invalid = |key, reason: String| Err(ModelError::InvalidParameter { key, reason });
        if n < 2 || n + planes.len() > u8::MAX as usize {
            return invalid("cities", format!("need 2..255 locations, got {n} cities"));
        }
        if planes.is_empty() {
            return invalid("planes", "at least one plane is required".into());
        }
        if passengers.len() > u8::MAX as usize {
            return invalid("passengers", "too many passengers".into());
        }
        if board_cost == 0 || debark_cost == 0 {
            return invalid("costs", "board and debark must cost at least 1".into());
        }
        let mut adjacency = vec![Vec::new(); n];
        for &(a, b, c) in &roads {
            if a as usize >= n || b as usize >= n || a == b {
                return invalid("roads", format!("bad road {a}-{b}"));
            }
            if c == 0 {
                return invalid("costs", format!("road {a}-{b} has zero cost"));
            }
            adjacency[a as usize].push((b, c));
            adjacency[b as usize].push((a, c));
        }
        for adj in &mut adjacency {
            adj.sort_unstable();
            adj.dedup_by_key(|e| e.0);
        }
        if planes.iter().any(|&p| p as usize >= n) {
            return invalid("planes", "plane starts outside the city list".into());
        }
        if passengers
            .iter()
            .any(|p| p.origin as usize >= n || p.destination as usize >= n)
        {
            return invalid("passengers", "passenger city outside the city list".into());
        }

        let (dist, hops, cheap_hops) = all_pairs(&adjacency);
        if passengers
            .iter()
            .any(|p| dist[p.origin as usize][p.destination as usize] >= UNREACHABLE)
        {
            return invalid("roads", "some passenger destination is unreachable".into());
        }
        Ok(TravelInstance {
            name: name.into(),
            cities,
            roads,
            planes,
            passengers,
            board_cost,
            debark_cost,
            adjacency,
            dist,
            hops,
            cheap_hops,
        })
    }

    pub fn n_cities(&self) -> usize {
        self.cities.len()
    }

    pub fn location(&self, state: &TravelState, passenger: usize) -> Location {
        let loc = state.0[self.planes.len() + passenger];
        let n = self.n_cities() as u8;
        if loc < n {
            Location::City(loc)
        } else {
            Location::InPlane(loc - n)
        }
    }

    pub fn plane_city(&self, state: &TravelState, plane: usize) -> u8 {
        state.0[plane]
    }

    /// Builds a state from explicit plane cities and passenger locations.
    pub fn state(&self, planes: &[u8], passengers: &[Location]) -> TravelState {
        assert_eq!(planes.len(), self.planes.len());
        assert_eq!(passengers.len(), self.passengers.len());
        let n = self.n_cities() as u8;
        let bytes: Vec<u8> = planes
            .iter()
            .copied()
            .chain(passengers.iter().map(|l| match *l {
                Location::City(c) => c,
                Location::InPlane(p) => n + p,
            }))
            .collect();
        TravelState(bytes.into_boxed_slice())
    }

    pub fn cheapest_flight(&self, from: u8, to: u8) -> Cost {
        self.dist[from as usize][to as usize]
    }
}

/// Floyd-Warshall over (cost, hops) pairs plus a plain hop count.
type PairTables = (Vec<Vec<Cost>>, Vec<Vec<u64>>, Vec<Vec<u64>>);

fn all_pairs(adjacency: &[Vec<(u8, Cost)>]) -> PairTables {
    let n = adjacency.len();
    let mut best = vec![vec![(UNREACHABLE, u64::MAX / 4); n]; n];
    let mut hops = vec![vec![u64::MAX / 4; n]; n];
    for i in 0..n {
        best[i][i] = (0, 0);
        hops[i][i] = 0;
        for &(j, c) in &adjacency[i] {
            best[i][j as usize] = best[i][j as usize].min((c, 1));
            hops[i][j as usize] = 1;
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = (best[i][k].0 + best[k][j].0, best[i][k].1 + best[k][j].1);
                if via < best[i][j] {
                    best[i][j] = via;
                }
                let h = hops[i][k] + hops[k][j];
                if h < hops[i][j] {
                    hops[i][j] = h;
                }
            }
        }
    }
    let dist = best.iter().map(|r| r.iter().map(|x| x.0).collect()).collect();
    let cheap = best.iter().map(|r| r.iter().map(|x| x.1).collect()).collect();
    (dist, hops, cheap)
}

/// Five cities (four corners of a square plus a center), one plane per
/// corner, and `k` passengers at each of two corners heading for the center.
/// With `adjacent` false the two origin corners are opposite each other.
pub fn make_rendezvous_with(
    k: usize,
    adjacent: bool,
    diagonal_cost: Cost,
    exterior_cost: Cost,
) -> Result<TravelInstance, ModelError> {
    if k == 0 {
        return Err(ModelError::InvalidParameter {
            key: "k",
            reason: "need at least one passenger per origin".into(),
        });
    }
    let cities = ["c1", "c2", "c3", "c4", "center"].map(String::from).to_vec();
    let center = 4u8;
    let mut roads = Vec::new();
    for c in 0..4u8 {
        roads.push((c, (c + 1) % 4, exterior_cost));
        roads.push((c, center, diagonal_cost));
    }
    let second = if adjacent { 1 } else { 2 };
    let passengers = std::iter::repeat_n(0u8, k)
        .chain(std::iter::repeat_n(second, k))
        .map(|origin| Passenger {
            origin,
            destination: center,
        })
        .collect();
    TravelInstance::new(
        format!("rendezvous(k={k}{})", if adjacent { ",adjacent" } else { "" }),
        cities,
        roads,
        vec![0, 1, 2, 3],
        passengers,
        1,
        1,
    )
}

pub fn make_rendezvous(k: usize) -> Result<TravelInstance, ModelError> {
    make_rendezvous_with(k, false, RENDEZVOUS_DIAGONAL_COST, RENDEZVOUS_EXTERIOR_COST)
}

/// A chain of `n_cities` with a plane and `per_end` passengers at each
/// endpoint; every passenger must reach the opposite endpoint.
pub fn make_swap_with(n_cities: usize, per_end: usize, fly_cost: Cost) -> Result<TravelInstance, ModelError> {
    if n_cities < 2 {
        return Err(ModelError::InvalidParameter {
            key: "n_cities",
            reason: format!("a chain needs at least 2 cities, got {n_cities}"),
        });
    }
    if per_end == 0 {
        return Err(ModelError::InvalidParameter {
            key: "passengers",
            reason: "need at least one passenger per endpoint".into(),
        });
    }
    let last = (n_cities - 1) as u8;
    let cities = (0..n_cities).map(|i| format!("city{}", i + 1)).collect();
    let roads = (0..last).map(|i| (i, i + 1, fly_cost)).collect();
    let passengers = std::iter::repeat_n((0, last), per_end)
        .chain(std::iter::repeat_n((last, 0), per_end))
        .map(|(origin, destination)| Passenger { origin, destination })
        .collect();
    let name = if per_end == 1 && fly_cost == DEFAULT_FLY_COST {
        format!("swap(n={n_cities})")
    } else {
        format!("swap(n={n_cities},per_end={per_end},fly={fly_cost})")
    };
    TravelInstance::new(name, cities, roads, vec![0, last], passengers, 1, 1)
}

pub fn make_swap(n_cities: usize) -> Result<TravelInstance, ModelError> {
    make_swap_with(n_cities, 1, DEFAULT_FLY_COST)
}

/// A chain of `n_cities` with both planes at the first city, `stranded`
/// passengers at the last city bound for the first, and `idle` passengers
/// already at their destination beside the planes.
pub fn make_ferry(n_cities: usize, stranded: usize, idle: usize) -> Result<TravelInstance, ModelError> {
    if n_cities < 2 {
        return Err(ModelError::InvalidParameter {
            key: "n_cities",
            reason: format!("a chain needs at least 2 cities, got {n_cities}"),
        });
    }
    if stranded == 0 {
        return Err(ModelError::InvalidParameter {
            key: "stranded",
            reason: "need at least one stranded passenger".into(),
        });
    }
    let last = (n_cities - 1) as u8;
    let cities = (0..n_cities).map(|i| format!("city{}", i + 1)).collect();
    let roads = (0..last).map(|i| (i, i + 1, DEFAULT_FLY_COST)).collect();
    let passengers = std::iter::repeat_n((last, 0), stranded)
        .chain(std::iter::repeat_n((0, 0), idle))
        .map(|(origin, destination)| Passenger { origin, destination })
        .collect();
    let name = format!("ferry(n={n_cities},stranded={stranded},idle={idle})");
    TravelInstance::new(name, cities, roads, vec![0, 0], passengers, 1, 1)
}

/// All legal actions: boards, then debarks, then flights.
pub fn travel_children(state: &TravelState, instance: &TravelInstance) -> Vec<Edge<TravelAction, TravelState>> {
    let mut out = Vec::new();
    push_children(state, instance, &mut out);
    out
}

fn push_children(state: &TravelState, t: &TravelInstance, out: &mut Vec<Edge<TravelAction, TravelState>>) {
    let np = t.planes.len();
    let n = t.n_cities() as u8;
    let with = |i: usize, v: u8| {
        let mut b = state.0.clone();
        b[i] = v;
        TravelState(b)
    };
    for p in 0..t.passengers.len() {
        let loc = state.0[np + p];
        if loc < n {
            for plane in 0..np {
                if state.0[plane] == loc {
                    out.push(Edge {
                        action: TravelAction::Board {
                            passenger: p as u8,
                            plane: plane as u8,
                        },
                        cost: t.board_cost,
                        to: with(np + p, n + plane as u8),
                    });
                }
            }
        }
    }
    for p in 0..t.passengers.len() {
        let loc = state.0[np + p];
        if loc >= n {
            let plane = loc - n;
            out.push(Edge {
                action: TravelAction::Debark {
                    passenger: p as u8,
                    plane,
                },
                cost: t.debark_cost,
                to: with(np + p, state.0[plane as usize]),
            });
        }
    }
    for plane in 0..np {
        let from = state.0[plane];
        for &(to, cost) in &t.adjacency[from as usize] {
            out.push(Edge {
                action: TravelAction::Fly {
                    plane: plane as u8,
                    from,
                    to,
                },
                cost,
                to: with(plane, to),
            });
        }
    }
}

/// Heuristic estimates for a travel state.
///
/// Each passenger away from its destination needs its own board (unless
/// already aboard) and debark. Flights are estimated from the city the
/// passenger currently occupies or is parked in: the admissible estimate
/// takes the longest single cheapest route; the satisficing estimates add
/// up the longest route out of each distinct origin city.
pub fn travel_heuristics(state: &TravelState, t: &TravelInstance) -> Heuristics {
    let np = t.planes.len();
    let n = t.n_cities() as u8;
    let mut handling_cost = 0;
    let mut handling_actions = 0;
    let mut max_route = 0;
    // origin city -> (max cost, max hops, max cheap hops)
    let mut by_origin: BTreeMap<u8, (Cost, u64, u64)> = BTreeMap::new();
    for (p, passenger) in t.passengers.iter().enumerate() {
        let loc = state.0[np + p];
        if loc == passenger.destination {
            continue;
        }
        let origin = if loc < n {
            handling_cost += t.board_cost;
            handling_actions += 1;
            loc
        } else {
            state.0[(loc - n) as usize]
        };
        handling_cost += t.debark_cost;
        handling_actions += 1;
        let (o, d) = (origin as usize, passenger.destination as usize);
        max_route = max_route.max(t.dist[o][d]);
        let e = by_origin.entry(origin).or_default();
        e.0 = e.0.max(t.dist[o][d]);
        e.1 = e.1.max(t.hops[o][d]);
        e.2 = e.2.max(t.cheap_hops[o][d]);
    }
    let (route_cost, route_hops, route_cheap_hops) = by_origin
        .values()
        .fold((0, 0, 0), |acc, v| (acc.0 + v.0, acc.1 + v.1, acc.2 + v.2));
    Heuristics {
        h_c: handling_cost + route_cost,
        h_s: handling_actions + route_hops,
        h_s_hat: handling_actions + route_cheap_hops,
        h_c_admissible: handling_cost + max_route,
    }
}

impl Problem for TravelInstance {
    type State = TravelState;
    type Action = TravelAction;

    fn initial_state(&self) -> TravelState {
        let bytes: Vec<u8> = self
            .planes
            .iter()
            .copied()
            .chain(self.passengers.iter().map(|p| p.origin))
            .collect();
        TravelState(bytes.into_boxed_slice())
    }

    fn is_goal(&self, state: &TravelState) -> bool {
        let np = self.planes.len();
        self.passengers
            .iter()
            .enumerate()
            .all(|(i, p)| state.0[np + i] == p.destination)
    }

    fn successors(&self, state: &TravelState, out: &mut Vec<Edge<TravelAction, TravelState>>) {
        push_children(state, self, out);
    }

    fn heuristics(&self, state: &TravelState) -> Heuristics {
        travel_heuristics(state, self)
    }

    fn action_costs(&self) -> Vec<(String, Cost)> {
        let mut fly: Vec<Cost> = self.roads.iter().map(|r| r.2).collect();
        fly.sort_unstable();
        fly.dedup();
        let mut out = vec![
            ("board".to_string(), self.board_cost),
            ("debark".to_string(), self.debark_cost),
        ];
        out.extend(fly.into_iter().map(|c| (format!("fly-{c}"), c)));
        out
    }

    fn describe(&self) -> String {
        self.name.clone()
    }
}
