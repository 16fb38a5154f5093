//! Undirected multigraphs used for dual graphs.

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Graph {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Self {
        Graph { n, edges }
    }

    /// The cycle graph on n vertices.
    pub fn cycle(n: usize) -> Self {
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)).collect())
    }

    fn connected_without(&self, skip: &[usize]) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let next = p[y];
                p[y] = r;
                y = next;
            }
            r
        }
        let mut comps = self.n;
        for (k, &(a, b)) in self.edges.iter().enumerate() {
            if skip.contains(&k) {
                continue;
            }
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                parent[ra] = rb;
                comps -= 1;
            }
        }
        comps == 1
    }

    pub fn is_connected(&self) -> bool {
        self.connected_without(&[])
    }

    /// Whether removing any two edges keeps the graph connected; on failure
    /// returns the first disconnecting pair (0-based edge positions, the
    /// pair may repeat an edge when a single bridge suffices).
    pub fn three_edge_connected(&self) -> (bool, Option<(usize, usize)>) {
        let m = self.edges.len();
        for i in 0..m {
            if !self.connected_without(&[i]) {
                return (false, Some((i, i)));
            }
        }
        for i in 0..m {
            for j in i + 1..m {
                if !self.connected_without(&[i, j]) {
                    return (false, Some((i, j)));
                }
            }
        }
        (true, None)
    }

    /// Edges of a spanning forest (BFS from vertex 0 and onwards).
    pub fn spanning_tree(&self) -> Vec<usize> {
        let mut seen = vec![false; self.n];
        let mut tree = Vec::new();
        for root in 0..self.n {
            if seen[root] {
                continue;
            }
            seen[root] = true;
            let mut queue = std::collections::VecDeque::from([root]);
            while let Some(v) = queue.pop_front() {
                for (k, &(a, b)) in self.edges.iter().enumerate() {
                    let w = if a == v {
                        b
                    } else if b == v {
                        a
                    } else {
                        continue;
                    };
                    if !seen[w] {
                        seen[w] = true;
                        tree.push(k);
                        queue.push_back(w);
                    }
                }
            }
        }
        tree
    }
}
