//! The tree of homothety classes of lattices in `Q_p^2`, exported as DOT.

use std::collections::VecDeque;
use std::fmt::Write;

use jbeta_core::arith::fmt_rat;
use jbeta_core::centralizer_embed::BetaDecomposition;
use jbeta_core::herm_forms::dual_lattice;
use jbeta_core::latt_fun::DvrLattice;
use jbeta_core::linalg::{vadd, vscale};
use jbeta_core::Error;

use crate::error::CliResult;

#[derive(Clone, Debug)]
pub struct TreeNode {
    /// The representative contained in `o^2` but not in `p o^2`.
    pub lattice: DvrLattice,
    pub depth: usize,
    /// Some scaling of the class is self-dual for the form.
    pub self_dual: bool,
    /// The class is stable under `β`.
    pub fixed: bool,
}

#[derive(Clone, Debug)]
pub struct Tree {
    pub p: u64,
    pub nodes: Vec<TreeNode>,
    pub edges: Vec<(usize, usize)>,
}

/// The representative of the class of `l` inside `o^2` and not inside `p o^2`.
pub fn normalize(l: &DvrLattice) -> DvrLattice {
    let std = DvrLattice::standard(l.p(), l.ambient_dim());
    let inner = std.scale_p(1);
    let mut m = l.clone();
    while !m.is_subset(&std) {
        m = m.scale_p(1);
    }
    while m.is_subset(&inner) {
        m = m.scale_p(-1);
    }
    m
}

/// The `p + 1` classes adjacent to `l`.
pub fn neighbors(l: &DvrLattice) -> Vec<DvrLattice> {
    let p = l.p();
    let (b1, b2) = (&l.basis()[0], &l.basis()[1]);
    let pp = jbeta_core::arith::int(p as i64);
    let mut out: Vec<DvrLattice> = (0..p)
        .map(|t| {
            let c = vadd(b1, &vscale(b2, &jbeta_core::arith::int(t as i64)));
            DvrLattice::from_gens(p, 2, &[c, vscale(b2, &pp)])
        })
        .collect();
    out.push(DvrLattice::from_gens(p, 2, &[vscale(b1, &pp), b2.clone()]));
    out.into_iter().map(|m| normalize(&m)).collect()
}

/// The ball of radius `depth` around the standard vertex, for a
/// decomposition on a two-dimensional space over `Q`.
pub fn export_rank1_tree(decomp: &BetaDecomposition, depth: usize) -> CliResult<Tree> {
    if decomp.dim() != 2 {
        return Err(Error::UnsupportedDimension(decomp.dim()).into());
    }
    let p = decomp.p();
    let real = decomp.form.as_ref().map(|_| decomp.realified()).transpose()?;
    let mark = |l: &DvrLattice| -> CliResult<(bool, bool)> {
        let self_dual = match real {
            Some(r) => normalize(&dual_lattice(l, r)?) == *l,
            None => false,
        };
        Ok((self_dual, l.map(&decomp.beta_q).is_subset(l)))
    };
    let root = normalize(&DvrLattice::standard(p, 2));
    let (sd, fx) = mark(&root)?;
    let mut tree = Tree { p, nodes: vec![TreeNode { lattice: root, depth: 0, self_dual: sd, fixed: fx }], edges: Vec::new() };
    let mut queue = VecDeque::from([0usize]);
    while let Some(k) = queue.pop_front() {
        if tree.nodes[k].depth == depth {
            continue;
        }
        for m in neighbors(&tree.nodes[k].lattice) {
            if tree.nodes.iter().any(|n| n.lattice == m) {
                continue;
            }
            let (self_dual, fixed) = mark(&m)?;
            tree.nodes.push(TreeNode { lattice: m, depth: tree.nodes[k].depth + 1, self_dual, fixed });
            tree.edges.push((k, tree.nodes.len() - 1));
            queue.push_back(tree.nodes.len() - 1);
        }
    }
    Ok(tree)
}

impl Tree {
    pub fn index_of(&self, l: &DvrLattice) -> Option<usize> {
        let m = normalize(l);
        self.nodes.iter().position(|n| n.lattice == m)
    }

    /// Edges whose endpoints are both `β`-stable.
    pub fn fixed_edges(&self) -> Vec<(usize, usize)> {
        self.edges.iter().copied().filter(|&(a, b)| self.nodes[a].fixed && self.nodes[b].fixed).collect()
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph tree {\n  node [shape=circle];\n");
        for (k, n) in self.nodes.iter().enumerate() {
            let basis: Vec<String> =
                n.lattice.basis().iter().map(|b| b.iter().map(fmt_rat).collect::<Vec<_>>().join(",")).collect();
            let mut attrs = vec![format!("label=\"[{}]\"", basis.join("; "))];
            if n.self_dual {
                attrs.push("shape=doublecircle".into());
            }
            if n.fixed {
                attrs.push("style=filled, fillcolor=gold".into());
            }
            let _ = writeln!(s, "  v{k} [{}];", attrs.join(", "));
        }
        let fixed = self.fixed_edges();
        for &(a, b) in &self.edges {
            let style = if fixed.contains(&(a, b)) { " [penwidth=3, color=red]" } else { "" };
            let _ = writeln!(s, "  v{a} -- v{b}{style};");
        }
        s.push_str("}\n");
        s
    }
}
