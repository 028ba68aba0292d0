//! Deterministic network generators.
//!
//! A generator is named by a spec string `kind[:key=value[,key=value...]]`,
//! e.g. `grid:rows=3,cols=4,p=0.95` or `random:n=7,m=12,seed=42`.
//!
//! `random` draws from ChaCha8 seeded with `seed` (via `seed_from_u64`):
//! first a spanning arborescence rooted at node 1 (node `k` gets an arc from
//! a uniformly chosen earlier node), then extra arcs from a Fisher-Yates
//! shuffle of the unused ordered pairs, then a shuffle of the whole arc list.
//! Without `p`, each arc's probability is uniform over `0.50, 0.51, ..., 0.99`.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use relbat_core::{Arc, BinaryStateNetwork};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GenError {
    #[error("unknown generator kind {0:?}")]
    UnknownKind(String),
    #[error("bad parameter: {0}")]
    BadParam(String),
    #[error("invalid parameters: {0}")]
    Invalid(String),
}

/// Largest node count any generator will produce.
pub const MAX_GENERATED_NODES: usize = 4096;

#[derive(Debug, Clone, PartialEq)]
pub enum Generator {
    /// The 4-node, 9-arc example network.
    Fig1,
    /// Its five forward arcs.
    Fig2,
    /// The bridge network with every edge in both directions (10 arcs).
    Bridge4 { p: f64 },
    /// `len` arcs in series.
    Chain { len: usize, p: f64 },
    /// `rows x cols` lattice, both directions on every edge, source in one
    /// corner and sink in the opposite one.
    Grid { rows: usize, cols: usize, p: f64 },
    /// Every ordered pair of distinct nodes.
    Complete { n: usize, p: f64 },
    Random {
        n: usize,
        m: usize,
        seed: u64,
        p: Option<f64>,
    },
}

impl Generator {
    pub const KINDS: [&'static str; 7] =
        ["fig1", "fig2", "bridge4", "chain", "grid", "complete", "random"];

    pub fn kind(&self) -> &'static str {
        match self {
            Generator::Fig1 => "fig1",
            Generator::Fig2 => "fig2",
            Generator::Bridge4 { .. } => "bridge4",
            Generator::Chain { .. } => "chain",
            Generator::Grid { .. } => "grid",
            Generator::Complete { .. } => "complete",
            Generator::Random { .. } => "random",
        }
    }

    /// Builds from a kind and `key=value` parameters. Unset parameters take
    /// defaults; parameters the kind does not use are rejected.
    pub fn from_params(kind: &str, params: &[(&str, &str)]) -> Result<Self, GenError> {
        let mut p = None;
        let (mut len, mut rows, mut cols, mut n, mut m, mut seed) =
            (None, None, None, None, None, None);
        for &(key, value) in params {
            let int = || -> Result<usize, GenError> {
                value
                    .parse()
                    .map_err(|_| GenError::BadParam(format!("{key}={value:?} is not an integer")))
            };
            match key {
                "p" => {
                    let v: f64 = value
                        .parse()
                        .map_err(|_| GenError::BadParam(format!("p={value:?} is not a number")))?;
                    if !(0.0..=1.0).contains(&v) {
                        return Err(GenError::BadParam(format!("p={value} outside [0, 1]")));
                    }
                    p = Some(v);
                }
                "len" => len = Some(int()?),
                "rows" => rows = Some(int()?),
                "cols" => cols = Some(int()?),
                "n" => n = Some(int()?),
                "m" => m = Some(int()?),
                "seed" => {
                    seed = Some(value.parse::<u64>().map_err(|_| {
                        GenError::BadParam(format!("seed={value:?} is not an integer"))
                    })?)
                }
                _ => return Err(GenError::BadParam(format!("unknown key {key:?}"))),
            }
        }
        let used = |allowed: &[&str]| -> Result<(), GenError> {
            match params.iter().find(|(k, _)| !allowed.contains(k)) {
                Some((k, _)) => Err(GenError::BadParam(format!("{kind} does not take {k}"))),
                None => Ok(()),
            }
        };
        let p_or = p.unwrap_or(0.9);
        let gen = match kind {
            "fig1" => {
                used(&[])?;
                Generator::Fig1
            }
            "fig2" => {
                used(&[])?;
                Generator::Fig2
            }
            "bridge4" => {
                used(&["p"])?;
                Generator::Bridge4 { p: p_or }
            }
            "chain" => {
                used(&["len", "p"])?;
                Generator::Chain {
                    len: len.unwrap_or(4),
                    p: p_or,
                }
            }
            "grid" => {
                used(&["rows", "cols", "p"])?;
                Generator::Grid {
                    rows: rows.unwrap_or(3),
                    cols: cols.unwrap_or(3),
                    p: p_or,
                }
            }
            "complete" => {
                used(&["n", "p"])?;
                Generator::Complete {
                    n: n.unwrap_or(4),
                    p: p_or,
                }
            }
            "random" => {
                used(&["n", "m", "seed", "p"])?;
                Generator::Random {
                    n: n.unwrap_or(7),
                    m: m.unwrap_or(12),
                    seed: seed.unwrap_or(42),
                    p,
                }
            }
            other => return Err(GenError::UnknownKind(other.to_string())),
        };
        gen.validate()?;
        Ok(gen)
    }

    fn validate(&self) -> Result<(), GenError> {
        let nodes = match *self {
            Generator::Fig1 | Generator::Fig2 | Generator::Bridge4 { .. } => 4,
            Generator::Chain { len, .. } => {
                if len == 0 {
                    return Err(GenError::Invalid("chain needs len >= 1".into()));
                }
                len.saturating_add(1)
            }
            Generator::Grid { rows, cols, .. } => {
                if rows == 0 || cols == 0 || rows.saturating_mul(cols) < 2 {
                    return Err(GenError::Invalid("grid needs at least 2 cells".into()));
                }
                rows.saturating_mul(cols)
            }
            Generator::Complete { n, .. } => {
                if n < 2 {
                    return Err(GenError::Invalid("complete needs n >= 2".into()));
                }
                n
            }
            Generator::Random { n, m, .. } => {
                if n < 2 {
                    return Err(GenError::Invalid("random needs n >= 2".into()));
                }
                let max = n.saturating_mul(n - 1);
                if m < n - 1 || m > max {
                    return Err(GenError::Invalid(format!(
                        "random with n={n} needs {} <= m <= {max}",
                        n - 1
                    )));
                }
                n
            }
        };
        if nodes > MAX_GENERATED_NODES {
            return Err(GenError::Invalid(format!(
                "{nodes} nodes exceeds the limit of {MAX_GENERATED_NODES}"
            )));
        }
        Ok(())
    }

    pub fn generate(&self) -> BinaryStateNetwork {
        let (nodes, arcs) = match *self {
            Generator::Fig1 => (4, example_arcs().to_vec()),
            Generator::Fig2 => (4, example_arcs()[..5].to_vec()),
            Generator::Bridge4 { p } => (
                4,
                bidirectional(&[(1, 2), (1, 3), (2, 3), (2, 4), (3, 4)], p),
            ),
            Generator::Chain { len, p } => (
                len + 1,
                (1..=len).map(|i| Arc::new(i, i + 1, p)).collect(),
            ),
            Generator::Grid { rows, cols, p } => {
                let id = |r: usize, c: usize| r * cols + c + 1;
                let mut edges = Vec::new();
                for r in 0..rows {
                    for c in 0..cols {
                        if c + 1 < cols {
                            edges.push((id(r, c), id(r, c + 1)));
                        }
                        if r + 1 < rows {
                            edges.push((id(r, c), id(r + 1, c)));
                        }
                    }
                }
                (rows * cols, bidirectional(&edges, p))
            }
            Generator::Complete { n, p } => (
                n,
                (1..=n)
                    .flat_map(|u| (1..=n).filter(move |&v| v != u).map(move |v| Arc::new(u, v, p)))
                    .collect(),
            ),
            Generator::Random { n, m, seed, p } => (n, random_arcs(n, m, seed, p)),
        };
        BinaryStateNetwork::new(nodes, arcs).expect("generators emit valid networks")
    }

    /// A short name usable in reports, e.g. `grid:rows=3,cols=3,p=0.9`.
    pub fn label(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Fig1 | Generator::Fig2 => f.write_str(self.kind()),
            Generator::Bridge4 { p } => write!(f, "bridge4:p={p}"),
            Generator::Chain { len, p } => write!(f, "chain:len={len},p={p}"),
            Generator::Grid { rows, cols, p } => write!(f, "grid:rows={rows},cols={cols},p={p}"),
            Generator::Complete { n, p } => write!(f, "complete:n={n},p={p}"),
            Generator::Random { n, m, seed, p } => {
                write!(f, "random:n={n},m={m},seed={seed}")?;
                if let Some(p) = p {
                    write!(f, ",p={p}")?;
                }
                Ok(())
            }
        }
    }
}

impl FromStr for Generator {
    type Err = GenError;

    /// Parses `kind[:key=value[,key=value...]]`.
    fn from_str(spec: &str) -> Result<Self, GenError> {
        let (kind, rest) = spec.split_once(':').unwrap_or((spec, ""));
        let params = rest
            .split(',')
            .filter(|s| !s.is_empty())
            .map(|kv| {
                kv.split_once('=')
                    .ok_or_else(|| GenError::BadParam(format!("expected key=value, got {kv:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_params(kind.trim(), &params)
    }
}

fn example_arcs() -> [Arc; 9] {
    [
        Arc::new(1, 2, 0.8),
        Arc::new(1, 3, 0.9),
        Arc::new(2, 3, 0.7),
        Arc::new(2, 4, 0.8),
        Arc::new(3, 4, 0.9),
        Arc::new(2, 1, 0.9),
        Arc::new(3, 1, 0.8),
        Arc::new(4, 2, 0.7),
        Arc::new(4, 3, 0.8),
    ]
}

/// Forward arcs in edge order, then the reversed arcs sorted by (tail, head).
fn bidirectional(edges: &[(usize, usize)], p: f64) -> Vec<Arc> {
    let mut back: Vec<(usize, usize)> = edges.iter().map(|&(u, v)| (v, u)).collect();
    back.sort_unstable();
    edges
        .iter()
        .chain(&back)
        .map(|&(u, v)| Arc::new(u, v, p))
        .collect()
}

fn random_arcs(n: usize, m: usize, seed: u64, p: Option<f64>) -> Vec<Arc> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut used = vec![false; (n + 1) * (n + 1)];
    let mut pairs = Vec::with_capacity(m);
    for k in 2..=n {
        let parent = rng.random_range(1..k);
        used[parent * (n + 1) + k] = true;
        pairs.push((parent, k));
    }
    let mut spare: Vec<(usize, usize)> = (1..=n)
        .flat_map(|u| (1..=n).map(move |v| (u, v)))
        .filter(|&(u, v)| u != v && !used[u * (n + 1) + v])
        .collect();
    spare.shuffle(&mut rng);
    pairs.extend(spare.into_iter().take(m - (n - 1)));
    pairs.shuffle(&mut rng);
    pairs
        .into_iter()
        .map(|(u, v)| {
            let prob = p.unwrap_or_else(|| rng.random_range(50..=99u32) as f64 / 100.0);
            Arc::new(u, v, prob)
        })
        .collect()
}
