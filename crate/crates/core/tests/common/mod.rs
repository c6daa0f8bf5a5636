//! Brute-force oracles shared by the integration suites.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet, VecDeque};

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use braidcert::braid::Permutation;
use braidcert::tree::{CenterPoint, Tree};

pub mod trees {
    use super::*;

    pub fn random_tree(rng: &mut ChaCha8Rng, n: usize) -> Vec<(u64, u64)> {
        // random attachment over a shuffled labeling
        let mut labels: Vec<u64> = (0..n as u64).map(|x| x * 7 + 3).collect();
        for i in (1..labels.len()).rev() {
            labels.swap(i, rng.gen_range(0..=i));
        }
        (1..n).map(|i| (labels[rng.gen_range(0..i)], labels[i])).collect()
    }

    pub fn adjacency(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }

    /// Largest component left after deleting each vertex.
    fn max_component(adj: &[Vec<usize>], removed: usize) -> usize {
        let n = adj.len();
        let mut seen = vec![false; n];
        seen[removed] = true;
        let mut best = 0;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut size = 0;
            let mut queue = VecDeque::from([start]);
            seen[start] = true;
            while let Some(x) = queue.pop_front() {
                size += 1;
                for &y in &adj[x] {
                    if !seen[y] {
                        seen[y] = true;
                        queue.push_back(y);
                    }
                }
            }
            best = best.max(size);
        }
        best
    }

    /// Centroid by exhaustive vertex deletion; two centroids mean the edge
    /// between them.
    pub fn centroid(t: &Tree) -> CenterPoint {
        let adj: Vec<Vec<usize>> = (0..t.len()).map(|i| t.neighbors(i).to_vec()).collect();
        let scores: Vec<usize> = (0..t.len()).map(|v| max_component(&adj, v)).collect();
        let min = *scores.iter().min().unwrap();
        let best: Vec<usize> = (0..t.len()).filter(|&v| scores[v] == min).collect();
        match best.as_slice() {
            [v] => CenterPoint::Vertex { id: t.label(*v) },
            [u, v] => {
                let (a, b) = (t.label(*u), t.label(*v));
                CenterPoint::EdgeMidpoint { u: a.min(b), v: a.max(b) }
            }
            _ => panic!("a tree has one or two centroids"),
        }
    }

    /// AHU string of the tree rooted at `root`.
    fn rooted_code(adj: &[Vec<usize>], root: usize, parent: Option<usize>) -> String {
        let mut children: Vec<String> = adj[root]
            .iter()
            .filter(|&&c| Some(c) != parent)
            .map(|&c| rooted_code(adj, c, Some(root)))
            .collect();
        children.sort();
        format!("({})", children.concat())
    }

    pub fn canonical_form(n: usize, edges: &[(usize, usize)]) -> String {
        let adj = adjacency(n, edges);
        (0..n).map(|r| rooted_code(&adj, r, None)).min().unwrap()
    }

    /// Every unlabeled tree on `1..=max` vertices, once each.
    pub fn free_trees(max: usize) -> Vec<(usize, Vec<(usize, usize)>)> {
        let mut all = vec![(1usize, Vec::new())];
        let mut layer = vec![(1usize, Vec::<(usize, usize)>::new())];
        for n in 2..=max {
            let mut seen = HashSet::new();
            let mut next = Vec::new();
            for (m, edges) in &layer {
                for attach in 0..*m {
                    let mut e = edges.clone();
                    e.push((attach, *m));
                    if seen.insert(canonical_form(n, &e)) {
                        next.push((n, e));
                    }
                }
            }
            all.extend(next.iter().cloned());
            layer = next;
        }
        all
    }

    /// All adjacency-preserving vertex permutations, by backtracking.
    pub fn automorphisms(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
        let adj = adjacency(n, edges);
        let edge_set: HashSet<(usize, usize)> = edges.iter().flat_map(|&(u, v)| [(u, v), (v, u)]).collect();
        let mut out = Vec::new();
        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; n];
        fn go(
            i: usize,
            adj: &[Vec<usize>],
            edge_set: &HashSet<(usize, usize)>,
            map: &mut Vec<usize>,
            used: &mut Vec<bool>,
            out: &mut Vec<Vec<usize>>,
        ) {
            let n = adj.len();
            if i == n {
                out.push(map.clone());
                return;
            }
            for target in 0..n {
                if used[target] || adj[target].len() != adj[i].len() {
                    continue;
                }
                let ok = (0..i).all(|j| edge_set.contains(&(j, i)) == edge_set.contains(&(map[j], target)));
                if ok {
                    map[i] = target;
                    used[target] = true;
                    go(i + 1, adj, edge_set, map, used, out);
                    used[target] = false;
                }
            }
            map[i] = usize::MAX;
        }
        go(0, &adj, &edge_set, &mut map, &mut used, &mut out);
        out
    }

    pub fn build(n: usize, edges: &[(usize, usize)]) -> Tree {
        let vertices: Vec<u64> = (0..n as u64).collect();
        let e: Vec<(u64, u64)> = edges.iter().map(|&(u, v)| (u as u64, v as u64)).collect();
        Tree::new(&vertices, &e).unwrap()
    }
}

pub mod groups {
    use super::*;

    pub fn all_perms(n: usize) -> Vec<Permutation> {
        fn rec(prefix: &mut Vec<usize>, rest: &mut Vec<usize>, out: &mut Vec<Permutation>) {
            if rest.is_empty() {
                out.push(Permutation::from_images(prefix).unwrap());
                return;
            }
            for i in 0..rest.len() {
                let x = rest.remove(i);
                prefix.push(x);
                rec(prefix, rest, out);
                prefix.pop();
                rest.insert(i, x);
            }
        }
        let mut out = Vec::new();
        rec(&mut Vec::new(), &mut (1..=n).collect(), &mut out);
        out
    }

    /// Closure of a set under composition, as a plain set.
    pub fn closure(n: usize, gens: &[Permutation]) -> BTreeSet<Vec<usize>> {
        let mut set = BTreeSet::from([Permutation::identity(n).images()]);
        let mut frontier = vec![Permutation::identity(n)];
        while let Some(x) = frontier.pop() {
            for g in gens {
                let y = x.then(g);
                if set.insert(y.images()) {
                    frontier.push(y);
                }
            }
        }
        set
    }

    /// Derived series by taking every commutator of every pair of elements.
    pub fn derived_length(n: usize, gens: &[Permutation]) -> Option<usize> {
        let mut current = closure(n, gens);
        let mut steps = 0;
        loop {
            if current.len() == 1 {
                return Some(steps);
            }
            let elems: Vec<Permutation> = current.iter().map(|i| Permutation::from_images(i).unwrap()).collect();
            let comms: Vec<Permutation> = elems
                .iter()
                .flat_map(|a| elems.iter().map(move |b| a.commutator(b)))
                .collect();
            let next = closure(n, &comms);
            if next == current {
                return None;
            }
            current = next;
            steps += 1;
        }
    }
}
