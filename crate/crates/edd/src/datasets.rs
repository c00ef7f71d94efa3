//! Topologies seeded from external data: base-station coordinate files and
//! SNAP-style edge lists.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use edd_core::{generate, EddError, EddInstance, EdgeServerNetwork, GeneratorConfig, Node, Weight};
use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{parse_err, read, Error, Result};

/// One row of a base-station file.
#[derive(Debug, Clone, PartialEq)]
pub struct Station {
    pub id: String,
    pub latitude: f64,
    pub longitude: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StationInstance {
    pub instance: EddInstance,
    /// `stations[v - 1]` sits at server `v`.
    pub stations: Vec<Station>,
}

/// Reads a CSV with a header row. The id is the first column; latitude and
/// longitude are located by header name (`lat*`, `lon*`/`lng*`), falling
/// back to the second and third columns.
pub fn read_stations(path: impl AsRef<Path>) -> Result<Vec<Station>> {
    let path = path.as_ref();
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).flexible(true).from_path(path)?;
    let headers = reader.headers()?.clone();
    let find = |prefixes: &[&str], fallback: usize| {
        headers
            .iter()
            .position(|h| {
                let h = h.to_ascii_lowercase();
                prefixes.iter().any(|p| h.starts_with(p))
            })
            .unwrap_or(fallback)
    };
    let (lat_col, lon_col) = (find(&["lat"], 1), find(&["lon", "lng"], 2));
    let mut stations = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record?;
        let line = i + 2;
        let field = |c: usize| record.get(c).ok_or_else(|| parse_err(line, format!("missing column {}", c + 1)));
        let coord = |c: usize| -> Result<f64> {
            let raw = field(c)?;
            raw.parse().map_err(|_| parse_err(line, format!("bad coordinate {raw:?}")))
        };
        stations.push(Station { id: field(0)?.to_string(), latitude: coord(lat_col)?, longitude: coord(lon_col)? });
    }
    Ok(stations)
}

/// Places `config.n` servers on stations from the file (the first `n`, or a
/// seeded sample kept in file order) and links them with the random
/// generator. Coordinates are kept as metadata and do not affect weights.
pub fn load_stations(path: impl AsRef<Path>, config: &GeneratorConfig, sample: bool) -> Result<StationInstance> {
    if config.n == 0 {
        return Err(EddError::EmptyNetwork.into());
    }
    let all = read_stations(path)?;
    if all.len() < config.n {
        return Err(Error::Invalid(format!("file has {} stations, {} requested", all.len(), config.n)));
    }
    let stations = if sample {
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        let mut picked = index::sample(&mut rng, all.len(), config.n).into_vec();
        picked.sort_unstable();
        picked.into_iter().map(|i| all[i].clone()).collect()
    } else {
        all[..config.n].to_vec()
    };
    Ok(StationInstance { instance: generate(config)?, stations })
}

#[derive(Debug, Clone, PartialEq)]
pub struct EdgeListInstance {
    pub instance: EddInstance,
    /// Original id of each server, `original_ids[v - 1]` for server `v`.
    pub original_ids: Vec<u64>,
    pub warnings: Vec<String>,
}

/// Reads `u v [w]` lines (a lone `u` declares a vertex; `#` starts a
/// comment). Ids are compacted to `1..=N` in ascending order, missing
/// weights are drawn from `[weight_min, weight_max]` under the seed, and
/// only the largest connected component is kept. `config.n` and
/// `config.delta` are ignored; the file decides both.
pub fn load_edgelist(path: impl AsRef<Path>, config: &GeneratorConfig) -> Result<EdgeListInstance> {
    parse_edgelist(&read(path.as_ref())?, config)
}

pub fn parse_edgelist(text: &str, config: &GeneratorConfig) -> Result<EdgeListInstance> {
    if config.weight_min == 0 || config.weight_min > config.weight_max {
        return Err(EddError::InvalidConfig("weights need 1 <= weight_min <= weight_max").into());
    }
    if !(config.rho > 0.0 && config.rho <= 1.0) {
        return Err(EddError::InvalidConfig("rho must lie in (0, 1]").into());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut warnings = Vec::new();
    let mut ids = BTreeSet::new();
    let mut edges: BTreeMap<(u64, u64), Weight> = BTreeMap::new();
    let (mut loops, mut repeats) = (0usize, 0usize);
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = body.split_whitespace().collect();
        let num = |t: &str| -> Result<u64> {
            t.parse().map_err(|_| parse_err(line, format!("unparsable token {t:?}")))
        };
        match tokens[..] {
            [] => {}
            [u] => {
                ids.insert(num(u)?);
            }
            [u, v] | [u, v, _] => {
                let (u, v) = (num(u)?, num(v)?);
                let w = match tokens.get(2) {
                    Some(t) => match num(t)? {
                        0 => return Err(parse_err(line, "edge weight must be positive")),
                        w => w,
                    },
                    None => rng.gen_range(config.weight_min..=config.weight_max),
                };
                ids.extend([u, v]);
                if u == v {
                    loops += 1;
                } else {
                    match edges.entry((u.min(v), u.max(v))) {
                        Entry::Occupied(_) => repeats += 1,
                        Entry::Vacant(slot) => {
                            slot.insert(w);
                        }
                    }
                }
            }
            _ => return Err(parse_err(line, "expected `u v` or `u v w`")),
        }
    }
    if loops > 0 {
        warnings.push(format!("ignored {loops} self-loop(s)"));
    }
    if repeats > 0 {
        warnings.push(format!("ignored {repeats} repeated edge(s)"));
    }
    if ids.is_empty() {
        return Err(EddError::EmptyNetwork.into());
    }
    keep_largest_component(ids, edges, config, &mut rng, warnings)
}

fn keep_largest_component(
    ids: BTreeSet<u64>,
    edges: BTreeMap<(u64, u64), Weight>,
    config: &GeneratorConfig,
    rng: &mut ChaCha8Rng,
    mut warnings: Vec<String>,
) -> Result<EdgeListInstance> {
    let ids: Vec<u64> = ids.into_iter().collect();
    let pos = |x: u64| ids.binary_search(&x).expect("known id");
    let mut root: Vec<usize> = (0..ids.len()).collect();
    fn find(root: &mut [usize], mut x: usize) -> usize {
        while root[x] != x {
            root[x] = root[root[x]];
            x = root[x];
        }
        x
    }
    for &(u, v) in edges.keys() {
        let (a, b) = (find(&mut root, pos(u)), find(&mut root, pos(v)));
        if a != b {
            root[a.max(b)] = a.min(b);
        }
    }
    let mut size = vec![0usize; ids.len()];
    for i in 0..ids.len() {
        let r = find(&mut root, i);
        size[r] += 1;
    }
    // Largest component; on ties the one holding the smallest id.
    let best = (0..ids.len()).max_by(|&a, &b| size[a].cmp(&size[b]).then(b.cmp(&a))).expect("non-empty");
    let kept: Vec<u64> = (0..ids.len()).filter(|&i| find(&mut root, i) == best).map(|i| ids[i]).collect();
    if kept.len() < ids.len() {
        warnings.push(format!(
            "input is disconnected; dropped {} vertices outside the largest component",
            ids.len() - kept.len()
        ));
    }
    let new_id = |x: u64| kept.binary_search(&x).ok().map(|i| i + 1);
    let links: Vec<(Node, Node, Weight)> = edges
        .iter()
        .filter_map(|(&(u, v), &w)| Some((new_id(u)?, new_id(v)?, w)))
        .collect();
    let n = kept.len();
    let network = EdgeServerNetwork::new(n, links)?;
    let r = ((config.rho * n as f64 + 0.5) as usize).clamp(1, n);
    let destinations = index::sample(rng, n, r).into_iter().map(|i| i + 1);
    let instance = EddInstance::new(network, destinations, config.gamma, config.l_limit)?;
    Ok(EdgeListInstance { instance, original_ids: kept, warnings })
}
