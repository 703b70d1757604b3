use crate::error::{Error, Result};
use crate::game::AgentId;
use serde::{Deserialize, Serialize};

/// A partition of the agents `0..n` into non-empty coalitions.
///
/// Always kept in canonical form: members sorted, coalitions ordered by
/// their smallest member. Coalition indices refer to that order, and the
/// derived ordering on partitions is the lexicographic order of their
/// restricted growth strings.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Partition {
    coalitions: Vec<Vec<AgentId>>,
    owner: Vec<usize>,
}

impl Partition {
    pub fn new(n: usize, mut coalitions: Vec<Vec<AgentId>>) -> Result<Self> {
        let mut seen = vec![false; n];
        for c in coalitions.iter_mut() {
            if c.is_empty() {
                return Err(Error::InvalidPartition("empty coalition".into()));
            }
            c.sort_unstable();
            for &i in c.iter() {
                if i >= n {
                    return Err(Error::InvalidPartition(format!(
                        "agent {i} out of range for {n} agents"
                    )));
                }
                if seen[i] {
                    return Err(Error::InvalidPartition(format!("agent {i} appears twice")));
                }
                seen[i] = true;
            }
        }
        if let Some(missing) = seen.iter().position(|s| !s) {
            return Err(Error::InvalidPartition(format!(
                "agent {missing} is not covered"
            )));
        }
        Ok(Self::from_sorted(n, coalitions))
    }

    fn from_sorted(n: usize, mut coalitions: Vec<Vec<AgentId>>) -> Self {
        coalitions.sort_unstable_by_key(|c| c[0]);
        let mut owner = vec![0; n];
        for (k, c) in coalitions.iter().enumerate() {
            for &i in c {
                owner[i] = k;
            }
        }
        Partition { coalitions, owner }
    }

    pub fn singletons(n: usize) -> Self {
        Self::from_sorted(n, (0..n).map(|i| vec![i]).collect())
    }

    pub fn grand(n: usize) -> Self {
        Self::from_sorted(
            n,
            if n == 0 {
                vec![]
            } else {
                vec![(0..n).collect()]
            },
        )
    }

    /// Builds a partition from block labels (any labels; equal labels share
    /// a coalition).
    pub fn from_labels(labels: &[usize]) -> Self {
        let n = labels.len();
        let mut blocks: Vec<Vec<AgentId>> = Vec::new();
        let mut index = std::collections::HashMap::new();
        for (i, &l) in labels.iter().enumerate() {
            let k = *index.entry(l).or_insert_with(|| {
                blocks.push(Vec::new());
                blocks.len() - 1
            });
            blocks[k].push(i);
        }
        Self::from_sorted(n, blocks)
    }

    /// Restricted growth string: agent `i` maps to the index of its coalition.
    pub fn rgs(&self) -> &[usize] {
        &self.owner
    }

    pub fn agent_count(&self) -> usize {
        self.owner.len()
    }

    pub fn coalitions(&self) -> &[Vec<AgentId>] {
        &self.coalitions
    }

    pub fn len(&self) -> usize {
        self.coalitions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coalitions.is_empty()
    }

    pub fn coalition_index(&self, i: AgentId) -> usize {
        self.owner[i]
    }

    /// `π(i)`, the coalition containing `i`.
    pub fn coalition_of(&self, i: AgentId) -> &[AgentId] {
        &self.coalitions[self.owner[i]]
    }

    pub fn same_coalition(&self, i: AgentId, j: AgentId) -> bool {
        self.owner[i] == self.owner[j]
    }

    pub fn max_coalition_size(&self) -> usize {
        self.coalitions.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Moves `agent` into coalition `target`, or into a fresh singleton when
    /// `target` is `None`. Emptied coalitions disappear.
    pub(crate) fn moved(&self, agent: AgentId, target: Option<usize>) -> Partition {
        let mut coalitions = self.coalitions.clone();
        let from = self.owner[agent];
        coalitions[from].retain(|&x| x != agent);
        match target {
            Some(t) => {
                let pos = coalitions[t].binary_search(&agent).unwrap_err();
                coalitions[t].insert(pos, agent);
            }
            None => coalitions.push(vec![agent]),
        }
        coalitions.retain(|c| !c.is_empty());
        Self::from_sorted(self.owner.len(), coalitions)
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.owner.cmp(&other.owner)
    }
}

/// Wire form `{ "coalitions": [[i, ...], ...] }`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct PartitionJson {
    pub coalitions: Vec<Vec<AgentId>>,
}

impl From<&Partition> for PartitionJson {
    fn from(p: &Partition) -> Self {
        PartitionJson {
            coalitions: p.coalitions.clone(),
        }
    }
}

impl PartitionJson {
    pub fn into_partition(self, n: usize) -> Result<Partition> {
        Partition::new(n, self.coalitions)
    }
}

/// Enumerates all set partitions of `0..n` in lexicographic order of their
/// restricted growth strings, optionally limited in coalition count and
/// coalition size.
pub struct PartitionEnumerator {
    n: usize,
    max_blocks: usize,
    max_size: usize,
    rgs: Vec<usize>,
    sizes: Vec<usize>,
    started: bool,
    done: bool,
}

impl PartitionEnumerator {
    pub fn new(n: usize, max_blocks: Option<usize>, max_size: Option<usize>) -> Self {
        let max_blocks = max_blocks.unwrap_or(n).min(n.max(1));
        let max_size = max_size.unwrap_or(n);
        PartitionEnumerator {
            n,
            max_blocks,
            max_size,
            rgs: vec![0; n],
            sizes: vec![0; n + 1],
            started: false,
            done: n == 0 || max_blocks == 0 || max_size == 0,
        }
    }

    /// Advances to the next labelling; returns `None` when exhausted.
    pub fn next_rgs(&mut self) -> Option<&[usize]> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            if self.fill_from(0) {
                return Some(&self.rgs);
            }
            self.done = true;
            return None;
        }
        // Walk back from the end, incrementing the last position that can be
        // incremented, then fill the suffix with its smallest completion.
        let mut pos = self.n;
        while pos > 1 {
            pos -= 1;
            let current = self.rgs[pos];
            self.sizes[current] -= 1;
            let prefix_max = self.rgs[..pos].iter().copied().max().unwrap_or(0);
            let mut candidate = current + 1;
            while candidate <= prefix_max + 1 && candidate < self.max_blocks {
                if self.sizes[candidate] < self.max_size {
                    self.rgs[pos] = candidate;
                    self.sizes[candidate] += 1;
                    if self.fill_from(pos + 1) {
                        return Some(&self.rgs);
                    }
                    self.sizes[candidate] -= 1;
                }
                candidate += 1;
            }
        }
        self.done = true;
        None
    }

    /// Smallest feasible completion of positions `start..`; assumes sizes
    /// already count positions before `start`.
    fn fill_from(&mut self, start: usize) -> bool {
        if start == 0 {
            self.sizes.iter_mut().for_each(|s| *s = 0);
            self.rgs[0] = 0;
            self.sizes[0] = 1;
            return self.fill_from(1);
        }
        let mut blocks = self.rgs[..start].iter().copied().max().map_or(0, |m| m + 1);
        for pos in start..self.n {
            let mut placed = false;
            for label in 0..=blocks.min(self.max_blocks - 1) {
                if self.sizes[label] < self.max_size {
                    self.rgs[pos] = label;
                    self.sizes[label] += 1;
                    if label == blocks {
                        blocks += 1;
                    }
                    placed = true;
                    break;
                }
            }
            if !placed {
                for p in start..pos {
                    self.sizes[self.rgs[p]] -= 1;
                }
                return false;
            }
        }
        true
    }
}
