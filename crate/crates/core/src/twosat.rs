//! 2-SAT via strongly connected components of the implication graph.

/// A literal: variable index plus polarity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Lit {
    pub var: usize,
    pub value: bool,
}

impl Lit {
    pub fn new(var: usize, value: bool) -> Self {
        Lit { var, value }
    }

    fn node(self) -> usize {
        2 * self.var + usize::from(!self.value)
    }

    fn negate(self) -> Lit {
        Lit::new(self.var, !self.value)
    }
}

#[derive(Debug, Clone)]
pub struct TwoSat {
    vars: usize,
    /// Implication edges `(from, to)` between literal nodes.
    edges: Vec<(usize, usize)>,
}

impl TwoSat {
    pub fn new(vars: usize) -> Self {
        TwoSat {
            vars,
            edges: Vec::new(),
        }
    }

    /// Adds the clause `a ∨ b`.
    pub fn clause(&mut self, a: Lit, b: Lit) {
        self.edges.push((a.negate().node(), b.node()));
        self.edges.push((b.negate().node(), a.node()));
    }

    /// Forces `a` to hold.
    pub fn unit(&mut self, a: Lit) {
        self.clause(a, a);
    }

    /// Forbids `a` and `b` holding together.
    pub fn forbid(&mut self, a: Lit, b: Lit) {
        self.clause(a.negate(), b.negate());
    }

    /// A satisfying assignment, or `None`.
    pub fn solve(&self) -> Option<Vec<bool>> {
        let comp = tarjan(&Csr::new(2 * self.vars, &self.edges));
        // Tarjan numbers components in reverse topological order
        (0..self.vars)
            .map(|v| {
                let (t, f) = (comp[2 * v], comp[2 * v + 1]);
                (t != f).then_some(t < f)
            })
            .collect()
    }
}

/// Adjacency lists packed into one array.
struct Csr {
    start: Vec<usize>,
    targets: Vec<usize>,
}

impl Csr {
    fn new(nodes: usize, edges: &[(usize, usize)]) -> Self {
        let mut start = vec![0; nodes + 1];
        for &(from, _) in edges {
            start[from + 1] += 1;
        }
        for i in 0..nodes {
            start[i + 1] += start[i];
        }
        let mut fill = start.clone();
        let mut targets = vec![0; edges.len()];
        for &(from, to) in edges {
            targets[fill[from]] = to;
            fill[from] += 1;
        }
        Csr { start, targets }
    }

    fn len(&self) -> usize {
        self.start.len() - 1
    }

    fn out(&self, v: usize) -> &[usize] {
        &self.targets[self.start[v]..self.start[v + 1]]
    }
}

/// Iterative Tarjan; returns the component id of each node.
fn tarjan(graph: &Csr) -> Vec<usize> {
    const UNSET: usize = usize::MAX;
    let n = graph.len();
    let mut index = vec![UNSET; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut comp = vec![UNSET; n];
    let mut stack = Vec::new();
    let mut call: Vec<(usize, usize)> = Vec::new();
    let mut counter = 0;
    let mut ncomp = 0;

    for root in 0..n {
        if index[root] != UNSET {
            continue;
        }
        call.push((root, 0));
        while let Some(&(v, edge)) = call.last() {
            if edge == 0 {
                index[v] = counter;
                low[v] = counter;
                counter += 1;
                stack.push(v);
                on_stack[v] = true;
            }
            if let Some(&next) = graph.out(v).get(edge) {
                call.last_mut().expect("frame").1 += 1;
                if index[next] == UNSET {
                    call.push((next, 0));
                } else if on_stack[next] {
                    low[v] = low[v].min(index[next]);
                }
                continue;
            }
            call.pop();
            if low[v] == index[v] {
                loop {
                    let u = stack.pop().expect("tarjan stack");
                    on_stack[u] = false;
                    comp[u] = ncomp;
                    if u == v {
                        break;
                    }
                }
                ncomp += 1;
            }
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[v]);
            }
        }
    }
    comp
}
