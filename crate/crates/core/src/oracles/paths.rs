use crate::network::BinaryStateNetwork;

/// A directed simple source-to-sink path, as arc indices in travel order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MinimalPath {
    arcs: Vec<usize>,
}

impl MinimalPath {
    pub fn arcs(&self) -> &[usize] {
        &self.arcs
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    /// Visited nodes, source first.
    pub fn nodes(&self, net: &BinaryStateNetwork) -> Vec<usize> {
        std::iter::once(1)
            .chain(self.arcs.iter().map(|&k| net.arc(k).head))
            .collect()
    }

    /// Whether the arcs chain from source to sink without repeating a node.
    pub fn is_valid_in(&self, net: &BinaryStateNetwork) -> bool {
        let mut at = 1;
        let mut seen = vec![false; net.node_count() + 1];
        seen[1] = true;
        for &k in &self.arcs {
            if k >= net.arc_count() || net.arc(k).tail != at {
                return false;
            }
            at = net.arc(k).head;
            if std::mem::replace(&mut seen[at], true) {
                return false;
            }
        }
        !self.arcs.is_empty() && at == net.sink()
    }
}

/// All minimal paths of a network in depth-first discovery order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MinimalPathSet {
    paths: Vec<MinimalPath>,
}

impl MinimalPathSet {
    pub fn from_paths(paths: Vec<Vec<usize>>) -> Self {
        Self {
            paths: paths.into_iter().map(|arcs| MinimalPath { arcs }).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, MinimalPath> {
        self.paths.iter()
    }
}

impl<'a> IntoIterator for &'a MinimalPathSet {
    type Item = &'a MinimalPath;
    type IntoIter = std::slice::Iter<'a, MinimalPath>;

    fn into_iter(self) -> Self::IntoIter {
        self.paths.iter()
    }
}

struct Dfs<'a> {
    net: &'a BinaryStateNetwork,
    out: Vec<Vec<usize>>,
    on_path: Vec<bool>,
    stack: Vec<usize>,
    found: Vec<MinimalPath>,
    limit: usize,
}

impl Dfs<'_> {
    /// Returns false once more than `limit` paths have been found.
    fn extend(&mut self, u: usize) -> bool {
        for i in 0..self.out[u].len() {
            let k = self.out[u][i];
            let v = self.net.arc(k).head;
            if self.on_path[v] {
                continue;
            }
            self.stack.push(k);
            if v == self.net.sink() {
                if self.found.len() == self.limit {
                    return false;
                }
                self.found.push(MinimalPath {
                    arcs: self.stack.clone(),
                });
            } else {
                self.on_path[v] = true;
                let ok = self.extend(v);
                self.on_path[v] = false;
                if !ok {
                    return false;
                }
            }
            self.stack.pop();
        }
        true
    }
}

/// Every directed simple source-to-sink path, found by backtracking over
/// out-arcs in arc order.
pub fn find_all_minimal_paths(net: &BinaryStateNetwork) -> MinimalPathSet {
    find_minimal_paths_limited(net, usize::MAX).expect("unbounded search")
}

/// Like [`find_all_minimal_paths`] but gives up with `None` as soon as more
/// than `limit` paths exist.
pub fn find_minimal_paths_limited(net: &BinaryStateNetwork, limit: usize) -> Option<MinimalPathSet> {
    let mut dfs = Dfs {
        net,
        out: net.out_arcs(),
        on_path: vec![false; net.node_count() + 1],
        stack: Vec::new(),
        found: Vec::new(),
        limit,
    };
    dfs.on_path[1] = true;
    dfs.extend(1).then(|| MinimalPathSet { paths: dfs.found })
}
