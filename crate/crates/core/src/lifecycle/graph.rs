//! Commit DAG with ancestor and shortest-path queries.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use super::LifecycleError;
use crate::miner::CommitRecord;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommitNode {
    pub author_time: i64,
    pub parent_ids: Vec<String>,
}

#[derive(Debug, Clone, Default)]
pub struct CommitGraph {
    nodes: BTreeMap<String, CommitNode>,
}

impl CommitGraph {
    /// Builds a graph and checks that every parent exists and there are no
    /// cycles.
    pub fn new<I>(nodes: I) -> Result<Self, LifecycleError>
    where
        I: IntoIterator<Item = (String, CommitNode)>,
    {
        let nodes: BTreeMap<String, CommitNode> = nodes.into_iter().collect();
        for (id, n) in &nodes {
            if let Some(p) = n.parent_ids.iter().find(|p| !nodes.contains_key(*p)) {
                return Err(LifecycleError::MissingParent {
                    commit: id.clone(),
                    parent: p.clone(),
                });
            }
        }
        let g = CommitGraph { nodes };
        g.check_acyclic()?;
        Ok(g)
    }

    pub fn from_commits(commits: &[CommitRecord]) -> Result<Self, LifecycleError> {
        Self::new(commits.iter().map(|c| {
            (
                c.commit_id.clone(),
                CommitNode {
                    author_time: c.author_time,
                    parent_ids: c.parent_ids.clone(),
                },
            )
        }))
    }

    fn check_acyclic(&self) -> Result<(), LifecycleError> {
        let mut indegree: BTreeMap<&str, usize> = self.nodes.keys().map(|k| (k.as_str(), 0)).collect();
        for n in self.nodes.values() {
            for p in &n.parent_ids {
                *indegree.get_mut(p.as_str()).expect("parents checked") += 1;
            }
        }
        let mut ready: Vec<&str> = indegree.iter().filter(|(_, &d)| d == 0).map(|(&k, _)| k).collect();
        let mut seen = 0;
        while let Some(id) = ready.pop() {
            seen += 1;
            for p in &self.nodes[id].parent_ids {
                let d = indegree.get_mut(p.as_str()).expect("parents checked");
                *d -= 1;
                if *d == 0 {
                    ready.push(p);
                }
            }
        }
        if seen == self.nodes.len() {
            Ok(())
        } else {
            Err(LifecycleError::Cycle)
        }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn contains(&self, id: &str) -> bool {
        self.nodes.contains_key(id)
    }

    pub fn node(&self, id: &str) -> Option<&CommitNode> {
        self.nodes.get(id)
    }

    pub fn ids(&self) -> impl Iterator<Item = &str> {
        self.nodes.keys().map(String::as_str)
    }

    fn require(&self, id: &str) -> Result<&CommitNode, LifecycleError> {
        self.nodes.get(id).ok_or_else(|| LifecycleError::UnknownCommit(id.to_string()))
    }

    /// Shortest parent-edge path from `descendant` back to `ancestor`,
    /// both ends included. Among shortest paths the one whose commit id
    /// sequence is lexicographically smallest wins.
    pub fn shortest_path(&self, ancestor: &str, descendant: &str) -> Result<Option<Vec<String>>, LifecycleError> {
        self.require(ancestor)?;
        self.require(descendant)?;
        // distance to `ancestor` for every node that can reach it
        let mut dist: BTreeMap<&str, usize> = BTreeMap::new();
        let mut children: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
        for (id, n) in &self.nodes {
            for p in &n.parent_ids {
                children.entry(p.as_str()).or_default().push(id);
            }
        }
        let mut queue = VecDeque::from([(ancestor, 0usize)]);
        dist.insert(ancestor, 0);
        while let Some((id, d)) = queue.pop_front() {
            for &c in children.get(id).map(Vec::as_slice).unwrap_or_default() {
                if !dist.contains_key(c) {
                    dist.insert(c, d + 1);
                    queue.push_back((c, d + 1));
                }
            }
        }
        let Some(&total) = dist.get(descendant) else {
            return Ok(None);
        };
        let mut path = vec![descendant.to_string()];
        let mut cur = descendant;
        for remaining in (0..total).rev() {
            let next = self.nodes[cur]
                .parent_ids
                .iter()
                .filter(|p| dist.get(p.as_str()) == Some(&remaining))
                .min()
                .expect("a parent one step closer exists");
            path.push(next.clone());
            cur = next;
        }
        Ok(Some(path))
    }

    /// Whether `ancestor` is reachable from `descendant` through at least one
    /// parent edge.
    pub fn is_proper_ancestor(&self, ancestor: &str, descendant: &str) -> Result<bool, LifecycleError> {
        self.require(ancestor)?;
        self.require(descendant)?;
        if ancestor == descendant {
            return Ok(false);
        }
        let mut seen = BTreeSet::new();
        let mut stack = vec![descendant];
        while let Some(id) = stack.pop() {
            for p in &self.nodes[id].parent_ids {
                if p == ancestor {
                    return Ok(true);
                }
                if seen.insert(p.as_str()) {
                    stack.push(p);
                }
            }
        }
        Ok(false)
    }

    /// Commits on the shortest path from the eliminating commit back to the
    /// introducing one, counting the eliminating commit and every commit in
    /// between but not the introducing commit.
    pub fn commits_between(&self, intro_id: &str, elim_id: &str) -> Result<u32, LifecycleError> {
        match self.shortest_path(intro_id, elim_id)? {
            Some(p) if p.len() >= 2 => Ok((p.len() - 1) as u32),
            _ => Err(LifecycleError::NoPath {
                intro: intro_id.to_string(),
                elim: elim_id.to_string(),
            }),
        }
    }
}
