//! Rational expressions as hash-consed DAGs with degree certificates.
//!
//! Every node value is tracked as `P / L` where `P` is an integer polynomial and
//! `L` a product of recorded factors (variables, integers, or numerators of
//! earlier divisor nodes). The certificate bounds the per-variable degrees of
//! `P` and `L` and the l1-norm of `P`, which is what the grid identity test
//! needs. Nothing is ever expanded.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::fp::FpElem;
use super::mono::{Monomial, Point, Var, NVARS};
use super::rat::{log2_height, rat_to_string, Rat};
use super::scalar::Scalar;
use crate::error::{Error, Result};

pub type NodeId = u32;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Node {
    Const(Rat),
    Mono(Monomial),
    Add(NodeId, NodeId),
    Sub(NodeId, NodeId),
    Mul(NodeId, NodeId),
    Div(NodeId, NodeId),
    Neg(NodeId),
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FactorKey {
    Var(u8),
    Int(BigInt),
    /// The numerator polynomial of a divisor node.
    Poly(NodeId),
}

/// Degree certificate of a node value `P / L`.
#[derive(Clone, Debug)]
pub struct DegCert {
    /// Per-variable degree bound of `P`.
    pub num: [u32; NVARS],
    /// Per-variable degree of `L`.
    pub den: [u32; NVARS],
    /// Upper bound on log2 of the l1-norm of `P`'s integer coefficients.
    pub height: f64,
    /// Homogeneous degree in (B, C, D), when known.
    pub hom: Option<i32>,
    /// Bitmask of variables that occur.
    pub vars: u8,
    factors: BTreeMap<FactorKey, u32>,
}

impl DegCert {
    pub fn uses(&self, v: Var) -> bool {
        self.vars & (1 << v.index()) != 0
    }

    pub fn factor_count(&self) -> usize {
        self.factors.len()
    }
}

#[derive(Clone, Debug, Default)]
pub struct Arena {
    nodes: Vec<Node>,
    certs: Vec<DegCert>,
}

impl Arena {
    pub fn node(&self, id: NodeId) -> &Node {
        &self.nodes[id as usize]
    }

    pub fn cert(&self, id: NodeId) -> &DegCert {
        &self.certs[id as usize]
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Nodes reachable from `root`, in increasing id order (children first).
    pub fn reachable(&self, root: NodeId) -> Vec<NodeId> {
        let mut seen = vec![false; self.nodes.len()];
        let mut stack = vec![root];
        while let Some(id) = stack.pop() {
            if std::mem::replace(&mut seen[id as usize], true) {
                continue;
            }
            match &self.nodes[id as usize] {
                Node::Const(_) | Node::Mono(_) => {}
                Node::Neg(a) => stack.push(*a),
                Node::Add(a, b) | Node::Sub(a, b) | Node::Mul(a, b) | Node::Div(a, b) => {
                    stack.push(*a);
                    stack.push(*b);
                }
            }
        }
        (0..self.nodes.len() as NodeId).filter(|&i| seen[i as usize]).collect()
    }
}

/// Shared-arena handle to one node.
#[derive(Clone)]
pub struct LazyExpr {
    arena: Arc<Arena>,
    root: NodeId,
}

impl fmt::Debug for LazyExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LazyExpr({} nodes)", self.arena.reachable(self.root).len())
    }
}

impl LazyExpr {
    pub fn arena(&self) -> &Arc<Arena> {
        &self.arena
    }

    pub fn root(&self) -> NodeId {
        self.root
    }

    pub fn cert(&self) -> &DegCert {
        self.arena.cert(self.root)
    }

    pub fn node_count(&self) -> usize {
        self.arena.reachable(self.root).len()
    }

    pub fn constant(c: Rat) -> LazyExpr {
        let mut b = ExprBuilder::new();
        let id = b.constant(c);
        b.finish_one(id)
    }

    pub fn mono(m: Monomial) -> LazyExpr {
        let mut b = ExprBuilder::new();
        let id = b.mono(m);
        b.finish_one(id)
    }

    /// Parses a monomial and wraps it.
    pub fn parse_mono(s: &str) -> Result<LazyExpr> {
        Ok(Self::mono(Monomial::parse(s)?))
    }

    fn combine(&self, o: &LazyExpr, f: impl FnOnce(&mut ExprBuilder, NodeId, NodeId) -> Result<NodeId>) -> Result<LazyExpr> {
        let mut b = ExprBuilder::from_arena(&self.arena);
        let rhs = if Arc::ptr_eq(&self.arena, &o.arena) { o.root } else { b.import(o) };
        let id = f(&mut b, self.root, rhs)?;
        Ok(b.finish_one(id))
    }

    pub fn add(&self, o: &LazyExpr) -> LazyExpr {
        self.combine(o, |b, x, y| Ok(b.add(x, y))).expect("add is total")
    }

    pub fn sub(&self, o: &LazyExpr) -> LazyExpr {
        self.combine(o, |b, x, y| Ok(b.sub(x, y))).expect("sub is total")
    }

    pub fn mul(&self, o: &LazyExpr) -> LazyExpr {
        self.combine(o, |b, x, y| Ok(b.mul(x, y))).expect("mul is total")
    }

    pub fn div(&self, o: &LazyExpr) -> Result<LazyExpr> {
        self.combine(o, |b, x, y| b.div(x, y))
    }

    pub fn neg(&self) -> LazyExpr {
        let mut b = ExprBuilder::from_arena(&self.arena);
        let id = b.neg(self.root);
        b.finish_one(id)
    }

    /// The expression with q replaced by 1/q.
    pub fn invert_q(&self) -> LazyExpr {
        let mut b = ExprBuilder::new();
        let mut map: HashMap<NodeId, NodeId> = HashMap::new();
        for id in self.arena.reachable(self.root) {
            let new = match self.arena.node(id) {
                Node::Mono(m) => {
                    let mut m = m.clone();
                    m.exps[Var::Q.index()] = -m.exps[Var::Q.index()];
                    b.mono(m)
                }
                other => b.remap(other, &map).expect("division already valid"),
            };
            map.insert(id, new);
        }
        b.finish_one(map[&self.root])
    }

    /// Exact evaluation with field inversions.
    pub fn eval<S: Scalar>(&self, point: &Point<S>, proto: &S) -> Result<S> {
        Plan::new(&self.arena, self.root).eval(point, proto)
    }

    pub fn eval_rat(&self, point: &Point<Rat>) -> Result<Rat> {
        self.eval(point, &Rat::zero())
    }

    /// Evaluation over F_p.
    pub fn eval_fp(&self, point: &Point<FpElem>, p: u64) -> Result<FpElem> {
        self.eval(point, &FpElem::new(0, p))
    }

    /// Infix rendering, for diagnostics on small expressions.
    pub fn render(&self) -> String {
        let mut memo: HashMap<NodeId, String> = HashMap::new();
        for id in self.arena.reachable(self.root) {
            let s = match self.arena.node(id) {
                Node::Const(c) => rat_to_string(c),
                Node::Mono(m) => m.to_string(),
                Node::Add(a, b) => format!("({} + {})", memo[a], memo[b]),
                Node::Sub(a, b) => format!("({} - {})", memo[a], memo[b]),
                Node::Mul(a, b) => format!("{}*{}", memo[a], memo[b]),
                Node::Div(a, b) => format!("{}/{}", memo[a], memo[b]),
                Node::Neg(a) => format!("-{}", memo[a]),
            };
            memo.insert(id, s);
        }
        memo.remove(&self.root).unwrap_or_default()
    }
}

/// Appends hash-consed nodes, folding constants and monomials on the fly.
#[derive(Default)]
pub struct ExprBuilder {
    arena: Arena,
    index: HashMap<Node, NodeId>,
}

impl ExprBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_arena(arena: &Arena) -> Self {
        let index = arena.nodes.iter().enumerate().map(|(i, n)| (n.clone(), i as NodeId)).collect();
        ExprBuilder { arena: arena.clone(), index }
    }

    pub fn cert(&self, id: NodeId) -> &DegCert {
        self.arena.cert(id)
    }

    pub fn node(&self, id: NodeId) -> &Node {
        self.arena.node(id)
    }

    pub fn len(&self) -> usize {
        self.arena.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arena.is_empty()
    }

    pub fn finish(self) -> Arc<Arena> {
        Arc::new(self.arena)
    }

    pub fn finish_one(self, root: NodeId) -> LazyExpr {
        LazyExpr { arena: self.finish(), root }
    }

    /// Finishes with several roots sharing one arena.
    pub fn finish_many(self, roots: &[NodeId]) -> Vec<LazyExpr> {
        let arena = self.finish();
        roots.iter().map(|&root| LazyExpr { arena: arena.clone(), root }).collect()
    }

    /// Copies an expression from another arena into this one.
    pub fn import(&mut self, e: &LazyExpr) -> NodeId {
        let mut map: HashMap<NodeId, NodeId> = HashMap::new();
        for id in e.arena.reachable(e.root) {
            let new = self.remap(e.arena.node(id), &map).expect("imported division already valid");
            map.insert(id, new);
        }
        map[&e.root]
    }

    fn remap(&mut self, node: &Node, map: &HashMap<NodeId, NodeId>) -> Result<NodeId> {
        Ok(match node {
            Node::Const(c) => self.constant(c.clone()),
            Node::Mono(m) => self.mono(m.clone()),
            Node::Add(a, b) => self.add(map[a], map[b]),
            Node::Sub(a, b) => self.sub(map[a], map[b]),
            Node::Mul(a, b) => self.mul(map[a], map[b]),
            Node::Div(a, b) => self.div(map[a], map[b])?,
            Node::Neg(a) => self.neg(map[a]),
        })
    }

    pub fn constant(&mut self, c: Rat) -> NodeId {
        self.push(Node::Const(c))
    }

    pub fn int(&mut self, n: i64) -> NodeId {
        self.constant(Rat::from_integer(BigInt::from(n)))
    }

    pub fn one(&mut self) -> NodeId {
        self.int(1)
    }

    pub fn zero(&mut self) -> NodeId {
        self.int(0)
    }

    pub fn mono(&mut self, m: Monomial) -> NodeId {
        if m.coef.is_zero() || m.is_constant() {
            return self.constant(m.coef);
        }
        self.push(Node::Mono(m))
    }

    fn as_mono(&self, id: NodeId) -> Option<Monomial> {
        match self.node(id) {
            Node::Const(c) => Some(Monomial::constant(c.clone())),
            Node::Mono(m) => Some(m.clone()),
            _ => None,
        }
    }

    fn is_const(&self, id: NodeId, c: i64) -> bool {
        matches!(self.node(id), Node::Const(x) if *x == Rat::from_integer(BigInt::from(c)))
    }

    pub fn add(&mut self, a: NodeId, b: NodeId) -> NodeId {
        if self.is_const(a, 0) {
            return b;
        }
        if self.is_const(b, 0) {
            return a;
        }
        if let (Some(x), Some(y)) = (self.as_mono(a), self.as_mono(b)) {
            if x.exps == y.exps {
                return self.mono(Monomial::new(x.coef + y.coef, x.exps));
            }
        }
        self.push(Node::Add(a.min(b), a.max(b)))
    }

    pub fn sub(&mut self, a: NodeId, b: NodeId) -> NodeId {
        if a == b {
            return self.zero();
        }
        if self.is_const(b, 0) {
            return a;
        }
        if self.is_const(a, 0) {
            return self.neg(b);
        }
        if let (Some(x), Some(y)) = (self.as_mono(a), self.as_mono(b)) {
            if x.exps == y.exps {
                return self.mono(Monomial::new(x.coef - y.coef, x.exps));
            }
        }
        self.push(Node::Sub(a, b))
    }

    pub fn mul(&mut self, a: NodeId, b: NodeId) -> NodeId {
        if self.is_const(a, 0) || self.is_const(b, 0) {
            return self.zero();
        }
        if self.is_const(a, 1) {
            return b;
        }
        if self.is_const(b, 1) {
            return a;
        }
        if self.is_const(a, -1) {
            return self.neg(b);
        }
        if self.is_const(b, -1) {
            return self.neg(a);
        }
        if let (Some(x), Some(y)) = (self.as_mono(a), self.as_mono(b)) {
            return self.mono(x.mul(&y));
        }
        self.push(Node::Mul(a.min(b), a.max(b)))
    }

    pub fn neg(&mut self, a: NodeId) -> NodeId {
        if let Some(m) = self.as_mono(a) {
            return self.mono(m.scaled(&-Rat::one()));
        }
        if let Node::Neg(x) = self.node(a) {
            return *x;
        }
        self.push(Node::Neg(a))
    }

    pub fn div(&mut self, a: NodeId, b: NodeId) -> Result<NodeId> {
        if self.is_const(b, 0) {
            return Err(Error::PoleAtPoint);
        }
        if let Some(m) = self.as_mono(b) {
            let inv = self.mono(m.inv().expect("nonzero monomial"));
            return Ok(self.mul(a, inv));
        }
        if self.is_const(a, 0) {
            return Ok(a);
        }
        Ok(self.push(Node::Div(a, b)))
    }

    /// `1 / (1 - m)`. The factor is stored once for `m` and `1/m`.
    pub fn recip_one_minus(&mut self, m: &Monomial) -> Result<NodeId> {
        if m.coef.is_zero() {
            return Ok(self.one());
        }
        if m.is_constant() {
            if m.coef.is_one() {
                return Err(Error::PoleDetected(m.to_string()));
            }
            return Ok(self.constant((Rat::one() - &m.coef).recip()));
        }
        let flip = m.exps.iter().find(|&&e| e != 0).is_some_and(|&e| e < 0);
        let base = if flip { m.inv().expect("nonzero") } else { m.clone() };
        let one = self.one();
        let mb = self.mono(base.clone());
        let s = self.sub(one, mb);
        let r = self.div(one, s)?;
        if flip {
            let f = self.mono(base.scaled(&-Rat::one()));
            Ok(self.mul(f, r))
        } else {
            Ok(r)
        }
    }

    fn push(&mut self, node: Node) -> NodeId {
        if let Some(&id) = self.index.get(&node) {
            return id;
        }
        let cert = self.certify(&node);
        let id = self.arena.nodes.len() as NodeId;
        self.arena.nodes.push(node.clone());
        self.arena.certs.push(cert);
        self.index.insert(node, id);
        id
    }

    fn key_deg(&self, k: &FactorKey) -> [u32; NVARS] {
        match k {
            FactorKey::Var(v) => {
                let mut d = [0; NVARS];
                d[*v as usize] = 1;
                d
            }
            FactorKey::Int(_) => [0; NVARS],
            FactorKey::Poly(b) => self.cert(*b).num,
        }
    }

    fn key_log(&self, k: &FactorKey) -> f64 {
        match k {
            FactorKey::Var(_) => 0.0,
            FactorKey::Int(d) => log2_height(d),
            FactorKey::Poly(b) => self.cert(*b).height,
        }
    }

    fn den_of(&self, factors: &BTreeMap<FactorKey, u32>) -> [u32; NVARS] {
        let mut den = [0; NVARS];
        for (k, &m) in factors {
            for (d, kd) in den.iter_mut().zip(self.key_deg(k)) {
                *d += m * kd;
            }
        }
        den
    }

    /// Degree and log-norm of `L / La` where `L` contains `La`.
    fn excess(&self, l: &BTreeMap<FactorKey, u32>, la: &BTreeMap<FactorKey, u32>) -> ([u32; NVARS], f64) {
        let mut deg = [0; NVARS];
        let mut h = 0.0;
        for (k, &m) in l {
            let extra = m - la.get(k).copied().unwrap_or(0);
            if extra == 0 {
                continue;
            }
            for (d, kd) in deg.iter_mut().zip(self.key_deg(k)) {
                *d += extra * kd;
            }
            h += extra as f64 * self.key_log(k);
        }
        (deg, h)
    }

    fn certify(&self, node: &Node) -> DegCert {
        match node {
            Node::Const(c) => {
                let mut factors = BTreeMap::new();
                if !c.denom().is_one() {
                    factors.insert(FactorKey::Int(c.denom().clone()), 1);
                }
                DegCert {
                    num: [0; NVARS],
                    den: [0; NVARS],
                    height: log2_height(c.numer()),
                    hom: Some(0),
                    vars: 0,
                    factors,
                }
            }
            Node::Mono(m) => {
                let mut factors = BTreeMap::new();
                if !m.coef.denom().is_one() {
                    factors.insert(FactorKey::Int(m.coef.denom().clone()), 1);
                }
                let mut num = [0; NVARS];
                let mut den = [0; NVARS];
                let mut vars = 0u8;
                for (i, &e) in m.exps.iter().enumerate() {
                    if e > 0 {
                        num[i] = e as u32;
                    } else if e < 0 {
                        den[i] = (-e) as u32;
                        factors.insert(FactorKey::Var(i as u8), (-e) as u32);
                    }
                    if e != 0 {
                        vars |= 1 << i;
                    }
                }
                DegCert {
                    num,
                    den,
                    height: log2_height(m.coef.numer()),
                    hom: Some(m.projective_degree()),
                    vars,
                    factors,
                }
            }
            Node::Add(a, b) | Node::Sub(a, b) => {
                let (ca, cb) = (self.cert(*a), self.cert(*b));
                let mut factors = ca.factors.clone();
                for (k, &m) in &cb.factors {
                    let e = factors.entry(k.clone()).or_insert(0);
                    *e = (*e).max(m);
                }
                let (xa, ha) = self.excess(&factors, &ca.factors);
                let (xb, hb) = self.excess(&factors, &cb.factors);
                let mut num = [0; NVARS];
                for v in 0..NVARS {
                    num[v] = (ca.num[v] + xa[v]).max(cb.num[v] + xb[v]);
                }
                DegCert {
                    num,
                    den: self.den_of(&factors),
                    height: log2_sum(ca.height + ha, cb.height + hb),
                    hom: if ca.hom == cb.hom { ca.hom } else { None },
                    vars: ca.vars | cb.vars,
                    factors,
                }
            }
            Node::Mul(a, b) => {
                let (ca, cb) = (self.cert(*a), self.cert(*b));
                let mut factors = ca.factors.clone();
                for (k, &m) in &cb.factors {
                    *factors.entry(k.clone()).or_insert(0) += m;
                }
                let mut num = ca.num;
                for (n, m) in num.iter_mut().zip(cb.num) {
                    *n += m;
                }
                DegCert {
                    num,
                    den: self.den_of(&factors),
                    height: ca.height + cb.height,
                    hom: ca.hom.zip(cb.hom).map(|(x, y)| x + y),
                    vars: ca.vars | cb.vars,
                    factors,
                }
            }
            Node::Div(a, b) => {
                let (ca, cb) = (self.cert(*a), self.cert(*b));
                let mut factors = ca.factors.clone();
                *factors.entry(FactorKey::Poly(*b)).or_insert(0) += 1;
                let mut num = ca.num;
                for (n, m) in num.iter_mut().zip(cb.den) {
                    *n += m;
                }
                let lb: f64 = cb.factors.iter().map(|(k, &m)| m as f64 * self.key_log(k)).sum();
                DegCert {
                    num,
                    den: self.den_of(&factors),
                    height: ca.height + lb,
                    hom: ca.hom.zip(cb.hom).map(|(x, y)| x - y),
                    vars: ca.vars | cb.vars,
                    factors,
                }
            }
            Node::Neg(a) => self.cert(*a).clone(),
        }
    }
}

/// log2(2^x + 2^y), rounded up.
fn log2_sum(x: f64, y: f64) -> f64 {
    let (hi, lo) = if x >= y { (x, y) } else { (y, x) };
    if lo == f64::NEG_INFINITY {
        return hi;
    }
    hi + (1.0 + (lo - hi).exp2()).log2() + 1e-9 * (1.0 + hi.abs())
}

/// Per-variable bound on how many values of that variable can make some
/// denominator vanish once the other coordinates are fixed.
pub fn pole_degrees(arena: &Arena, root: NodeId) -> [u32; NVARS] {
    let mut deg = [0u32; NVARS];
    let mut neg_vars = 0u8;
    for id in arena.reachable(root) {
        match arena.node(id) {
            Node::Div(_, b) => {
                for (d, n) in deg.iter_mut().zip(arena.cert(*b).num) {
                    *d += n;
                }
            }
            Node::Mono(m) => {
                for (i, &e) in m.exps.iter().enumerate() {
                    if e < 0 {
                        neg_vars |= 1 << i;
                    }
                }
            }
            _ => {}
        }
    }
    for (i, d) in deg.iter_mut().enumerate() {
        if neg_vars & (1 << i) != 0 {
            *d += 1;
        }
    }
    deg
}

#[derive(Clone, Debug)]
enum Op {
    Const(Rat),
    Mono(Monomial),
    Add(usize, usize),
    Sub(usize, usize),
    Mul(usize, usize),
    Div(usize, usize),
    Neg(usize),
}

/// Reachable nodes flattened into slot order for repeated evaluation.
#[derive(Clone, Debug)]
pub struct Plan {
    ops: Vec<Op>,
}

impl Plan {
    pub fn new(arena: &Arena, root: NodeId) -> Plan {
        let order = arena.reachable(root);
        let slot: HashMap<NodeId, usize> = order.iter().enumerate().map(|(i, &id)| (id, i)).collect();
        let ops = order
            .iter()
            .map(|id| match arena.node(*id) {
                Node::Const(c) => Op::Const(c.clone()),
                Node::Mono(m) => Op::Mono(m.clone()),
                Node::Add(a, b) => Op::Add(slot[a], slot[b]),
                Node::Sub(a, b) => Op::Sub(slot[a], slot[b]),
                Node::Mul(a, b) => Op::Mul(slot[a], slot[b]),
                Node::Div(a, b) => Op::Div(slot[a], slot[b]),
                Node::Neg(a) => Op::Neg(slot[a]),
            })
            .collect();
        Plan { ops }
    }

    pub fn eval<S: Scalar>(&self, point: &Point<S>, proto: &S) -> Result<S> {
        let mut vals: Vec<S> = Vec::with_capacity(self.ops.len());
        for op in &self.ops {
            let v = match op {
                Op::Const(c) => proto.lift(c).ok_or(Error::PoleAtPoint)?,
                Op::Mono(m) => m.eval(point, proto)?,
                Op::Add(a, b) => vals[*a].add(&vals[*b]),
                Op::Sub(a, b) => vals[*a].sub(&vals[*b]),
                Op::Mul(a, b) => vals[*a].mul(&vals[*b]),
                Op::Div(a, b) => vals[*a].mul(&vals[*b].inv().ok_or(Error::PoleAtPoint)?),
                Op::Neg(a) => vals[*a].neg(),
            };
            vals.push(v);
        }
        vals.pop().ok_or(Error::Invalid("empty plan".into()))
    }

    /// Specializes to a prime for fraction-free evaluation.
    pub fn for_prime(&self, p: u64) -> Option<FfPlan> {
        let lift = |r: &Rat| -> Option<(u64, u64)> {
            let n = FpElem::from_rat(&Rat::from_integer(r.numer().clone()), p)?;
            let d = FpElem::from_rat(&Rat::from_integer(r.denom().clone()), p)?;
            if d.is_zero() {
                return None;
            }
            Some((n.value(), d.value()))
        };
        let mut ops = Vec::with_capacity(self.ops.len());
        for op in &self.ops {
            ops.push(match op {
                Op::Const(c) => {
                    let (n, d) = lift(c)?;
                    FfOp::Mono(n, d, [0; NVARS])
                }
                Op::Mono(m) => {
                    let (n, d) = lift(&m.coef)?;
                    FfOp::Mono(n, d, m.exps)
                }
                Op::Add(a, b) => FfOp::Add(*a as u32, *b as u32),
                Op::Sub(a, b) => FfOp::Sub(*a as u32, *b as u32),
                Op::Mul(a, b) => FfOp::Mul(*a as u32, *b as u32),
                Op::Div(a, b) => FfOp::Div(*a as u32, *b as u32),
                Op::Neg(a) => FfOp::Neg(*a as u32),
            });
        }
        Some(FfPlan { p, ops })
    }
}

#[derive(Clone, Debug)]
enum FfOp {
    Mono(u64, u64, [i32; NVARS]),
    Add(u32, u32),
    Sub(u32, u32),
    Mul(u32, u32),
    Div(u32, u32),
    Neg(u32),
}

/// Inversion-free evaluation over F_p: every value is a pair (num, den) and a
/// vanishing denominator anywhere is reported as a pole.
#[derive(Clone, Debug)]
pub struct FfPlan {
    p: u64,
    ops: Vec<FfOp>,
}

impl FfPlan {
    pub fn prime(&self) -> u64 {
        self.p
    }

    /// Returns `None` at a pole, else the (num, den) residues of the root.
    pub fn eval(&self, point: &[u64; NVARS], buf: &mut Vec<(u64, u64)>) -> Option<(u64, u64)> {
        let p = self.p;
        let mul = |a: u64, b: u64| ((a as u128 * b as u128) % p as u128) as u64;
        let add = |a: u64, b: u64| {
            let s = a + b;
            if s >= p {
                s - p
            } else {
                s
            }
        };
        let neg = |a: u64| if a == 0 { 0 } else { p - a };
        let pow = |mut b: u64, mut e: u32| {
            let mut acc = 1u64;
            while e > 0 {
                if e & 1 == 1 {
                    acc = mul(acc, b);
                }
                e >>= 1;
                if e > 0 {
                    b = mul(b, b);
                }
            }
            acc
        };
        buf.clear();
        for op in &self.ops {
            let (n, d) = match *op {
                FfOp::Mono(n, d, ref exps) => {
                    let (mut n, mut d) = (n, d);
                    for (i, &e) in exps.iter().enumerate() {
                        if e > 0 {
                            n = mul(n, pow(point[i], e as u32));
                        } else if e < 0 {
                            d = mul(d, pow(point[i], (-e) as u32));
                        }
                    }
                    (n, d)
                }
                FfOp::Add(a, b) => {
                    let ((na, da), (nb, db)) = (buf[a as usize], buf[b as usize]);
                    (add(mul(na, db), mul(nb, da)), mul(da, db))
                }
                FfOp::Sub(a, b) => {
                    let ((na, da), (nb, db)) = (buf[a as usize], buf[b as usize]);
                    (add(mul(na, db), neg(mul(nb, da))), mul(da, db))
                }
                FfOp::Mul(a, b) => {
                    let ((na, da), (nb, db)) = (buf[a as usize], buf[b as usize]);
                    (mul(na, nb), mul(da, db))
                }
                FfOp::Div(a, b) => {
                    let ((na, da), (nb, db)) = (buf[a as usize], buf[b as usize]);
                    (mul(na, db), mul(da, nb))
                }
                FfOp::Neg(a) => {
                    let (na, da) = buf[a as usize];
                    (neg(na), da)
                }
            };
            if d == 0 {
                return None;
            }
            buf.push((n, d));
        }
        buf.last().copied()
    }
}
