//! Brute-force reference semantics and generators shared by the integration
//! tests. Nothing here calls the engine's order, checker, or dynamics code:
//! models are copied into plain boolean matrices and every clause is
//! evaluated world by world, straight from its definition.

#![allow(dead_code)]

use std::collections::BTreeSet;

use prefagent_core::formula::{AttitudeKind, DynamicOp, Formula, OrderKind, PlanSymbol, Strictness};
use prefagent_core::model::{AgentModel, Assignment, PracticalAgentModel, Signature, WorldId};
use prefagent_core::order::{Preorder, Relation};
use prefagent_core::pgraph::{AgentProgram, PriorityGraph};
use prefagent_core::plans::PlanLibrary;
use proptest::prelude::*;

pub const ATOMS: [&str; 3] = ["p", "q", "r"];
pub const PLANS: [&str; 2] = ["a", "b"];

#[derive(Clone, Debug)]
pub struct Oracle {
    pub sig: Signature,
    pub bits: Vec<u64>,
    pub le_p: Vec<Vec<bool>>,
    pub le_d: Vec<Vec<bool>>,
    pub intentions: BTreeSet<PlanSymbol>,
}

impl Oracle {
    pub fn of(m: &AgentModel, intentions: &BTreeSet<PlanSymbol>) -> Oracle {
        let n = m.len();
        let mat = |k| (0..n).map(|i| (0..n).map(|j| m.order(k).le(i, j)).collect()).collect();
        Oracle {
            sig: m.signature().clone(),
            bits: m.assignments().iter().map(|a| a.0).collect(),
            le_p: mat(OrderKind::Plausibility),
            le_d: mat(OrderKind::Desirability),
            intentions: intentions.clone(),
        }
    }

    pub fn of_practical(m: &PracticalAgentModel) -> Oracle {
        Self::of(&m.model, &m.intentions)
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn le(&self, k: OrderKind) -> &Vec<Vec<bool>> {
        match k {
            OrderKind::Plausibility => &self.le_p,
            OrderKind::Desirability => &self.le_d,
        }
    }

    fn set_le(&mut self, k: OrderKind, m: Vec<Vec<bool>>) {
        match k {
            OrderKind::Plausibility => self.le_p = m,
            OrderKind::Desirability => self.le_d = m,
        }
    }

    pub fn lt(&self, k: OrderKind, a: usize, b: usize) -> bool {
        self.le(k)[a][b] && !self.le(k)[b][a]
    }

    /// `Min` by the textbook definition.
    pub fn min(&self, k: OrderKind, s: &[bool]) -> Vec<bool> {
        (0..self.len())
            .map(|w| s[w] && !(0..self.len()).any(|v| s[v] && self.lt(k, v, w)))
            .collect()
    }

    pub fn prop(&self, w: usize, f: &Formula) -> bool {
        let sig = &self.sig;
        let bits = self.bits[w];
        fn go(sig: &Signature, bits: u64, f: &Formula) -> bool {
            match f {
                Formula::Top => true,
                Formula::Bottom => false,
                Formula::Atom(a) => bits & (1 << sig.index_of(a).unwrap()) != 0,
                Formula::Not(a) => !go(sig, bits, a),
                Formula::And(a, b) => go(sig, bits, a) && go(sig, bits, b),
                Formula::Or(a, b) => go(sig, bits, a) || go(sig, bits, b),
                Formula::Implies(a, b) => !go(sig, bits, a) || go(sig, bits, b),
                _ => panic!("not propositional"),
            }
        }
        go(sig, bits, f)
    }

    pub fn truth(&self, lib: &PlanLibrary, f: &Formula) -> Vec<bool> {
        (0..self.len()).map(|w| self.holds_at(lib, w, f)).collect()
    }

    pub fn holds_everywhere(&self, lib: &PlanLibrary, f: &Formula) -> bool {
        self.truth(lib, f).into_iter().all(|b| b)
    }

    /// `Min_X [[cond]] ⊆ [[cons]]`
    fn conditional(&self, lib: &PlanLibrary, k: OrderKind, cons: &Formula, cond: &Formula) -> bool {
        let best = self.min(k, &self.truth(lib, cond));
        (0..self.len()).all(|w| !best[w] || self.holds_at(lib, w, cons))
    }

    pub fn holds_at(&self, lib: &PlanLibrary, w: usize, f: &Formula) -> bool {
        let n = self.len();
        match f {
            Formula::Top => true,
            Formula::Bottom => false,
            Formula::Atom(a) => self.bits[w] & (1 << self.sig.index_of(a).unwrap()) != 0,
            Formula::Not(a) => !self.holds_at(lib, w, a),
            Formula::And(a, b) => self.holds_at(lib, w, a) && self.holds_at(lib, w, b),
            Formula::Or(a, b) => self.holds_at(lib, w, a) || self.holds_at(lib, w, b),
            Formula::Implies(a, b) => !self.holds_at(lib, w, a) || self.holds_at(lib, w, b),
            Formula::Universal(a) => (0..n).all(|v| self.holds_at(lib, v, a)),
            Formula::Existential(a) => (0..n).any(|v| self.holds_at(lib, v, a)),
            Formula::Necessity(k, s, a) => (0..n).all(|v| {
                let below = match s {
                    Strictness::Weak => self.le(*k)[v][w],
                    Strictness::Strict => self.lt(*k, v, w),
                };
                !below || self.holds_at(lib, v, a)
            }),
            Formula::Possibility(k, s, a) => (0..n).any(|v| {
                let below = match s {
                    Strictness::Weak => self.le(*k)[v][w],
                    Strictness::Strict => self.lt(*k, v, w),
                };
                below && self.holds_at(lib, v, a)
            }),
            Formula::Mu(k, a) => self.min(*k, &self.truth(lib, a))[w],
            Formula::Attitude {
                kind,
                consequent: c,
                condition: d,
            } => {
                let bel = || self.conditional(lib, OrderKind::Plausibility, c, d);
                let adm = || {
                    self.conditional(lib, OrderKind::Desirability, c, d)
                        && (0..n).any(|v| self.holds_at(lib, v, c) && self.holds_at(lib, v, d))
                        && !bel()
                };
                match kind {
                    AttitudeKind::Belief => bel(),
                    AttitudeKind::Goal => self.conditional(lib, OrderKind::Desirability, c, d),
                    AttitudeKind::AdmissibleIntention => adm(),
                    AttitudeKind::Intention => {
                        adm()
                            && lib.iter().any(|plan| {
                                self.intentions.contains(plan.symbol())
                                    && self.conditional(
                                        lib,
                                        OrderKind::Plausibility,
                                        &Formula::and(
                                            plan.pre().clone(),
                                            Formula::plan(plan.symbol().clone(), (**c).clone()),
                                        ),
                                        d,
                                    )
                            })
                    }
                }
            }
            Formula::Intends(alpha) => self.intentions.contains(alpha),
            Formula::Dynamic { op, argument, body } => match op {
                DynamicOp::Announce => {
                    if !self.prop(w, argument) {
                        return true;
                    }
                    let keep: Vec<bool> = (0..n).map(|v| self.prop(v, argument)).collect();
                    let (sub, index) = self.restrict(&keep);
                    sub.holds_at(lib, index[w].unwrap(), body)
                }
                DynamicOp::Upgrade(k) => self.upgrade(*k, argument).holds_at(lib, w, body),
                DynamicOp::Contract(k) => self.contract(*k, argument).holds_at(lib, w, body),
            },
            Formula::Plan(alpha, body) => {
                let plan = lib.get(alpha).unwrap();
                if !self.prop(w, plan.pre()) {
                    return true;
                }
                let (sub, index) = self.update(lib, alpha);
                sub.holds_at(lib, index[w].unwrap(), body)
            }
        }
    }

    /// Sub-model on `keep`, with the old-to-new index map.
    pub fn restrict(&self, keep: &[bool]) -> (Oracle, Vec<Option<usize>>) {
        let kept: Vec<usize> = (0..self.len()).filter(|&w| keep[w]).collect();
        let mut index = vec![None; self.len()];
        for (i, &w) in kept.iter().enumerate() {
            index[w] = Some(i);
        }
        let sub = |m: &Vec<Vec<bool>>| kept.iter().map(|&a| kept.iter().map(|&b| m[a][b]).collect()).collect();
        (
            Oracle {
                sig: self.sig.clone(),
                bits: kept.iter().map(|&w| self.bits[w]).collect(),
                le_p: sub(&self.le_p),
                le_d: sub(&self.le_d),
                intentions: self.intentions.clone(),
            },
            index,
        )
    }

    pub fn announce(&self, phi: &Formula) -> Oracle {
        let keep: Vec<bool> = (0..self.len()).map(|v| self.prop(v, phi)).collect();
        self.restrict(&keep).0
    }

    pub fn upgrade(&self, k: OrderKind, phi: &Formula) -> Oracle {
        let n = self.len();
        let t: Vec<bool> = (0..n).map(|v| self.prop(v, phi)).collect();
        let old = self.le(k);
        let new = (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| (old[a][b] && !(!t[a] && t[b])) || (t[a] && !t[b]))
                    .collect()
            })
            .collect();
        let mut out = self.clone();
        out.set_le(k, new);
        out
    }

    pub fn contract(&self, k: OrderKind, phi: &Formula) -> Oracle {
        let n = self.len();
        let neg: Vec<bool> = (0..n).map(|v| !self.prop(v, phi)).collect();
        let min_all = self.min(k, &vec![true; n]);
        let min_neg = self.min(k, &neg);
        let old = self.le(k);
        let new = (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| min_all[a] || min_neg[a] || (old[a][b] && !min_neg[b]))
                    .collect()
            })
            .collect();
        let mut out = self.clone();
        out.set_le(k, new);
        out
    }

    pub fn update(&self, lib: &PlanLibrary, alpha: &PlanSymbol) -> (Oracle, Vec<Option<usize>>) {
        let plan = lib.get(alpha).unwrap();
        let keep: Vec<bool> = (0..self.len()).map(|v| self.prop(v, plan.pre())).collect();
        let (mut sub, index) = self.restrict(&keep);
        for bits in &mut sub.bits {
            for (atom, value) in plan.effects() {
                let i = self.sig.index_of(atom).unwrap();
                if *value {
                    *bits |= 1 << i;
                } else {
                    *bits &= !(1 << i);
                }
            }
        }
        (sub, index)
    }

    pub fn is_preorder(m: &[Vec<bool>]) -> bool {
        let n = m.len();
        (0..n).all(|a| m[a][a]) && (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| !(m[a][b] && m[b][c]) || m[a][c])))
    }

    pub fn plan_ok(&self, lib: &PlanLibrary, alpha: &PlanSymbol) -> bool {
        let plan = lib.get(alpha).unwrap();
        self.holds_everywhere(lib, &Formula::belief(plan.pre().clone(), Formula::Top))
            && self.holds_everywhere(
                lib,
                &Formula::attitude(AttitudeKind::AdmissibleIntention, plan.post().clone(), Formula::Top),
            )
    }
}

/// The lexicographic order of a priority graph, quantifier for quantifier.
pub fn oracle_induced(g: &PriorityGraph, sig: &Signature, worlds: &[Assignment]) -> Vec<Vec<bool>> {
    let o = Oracle {
        sig: sig.clone(),
        bits: worlds.iter().map(|a| a.0).collect(),
        le_p: vec![],
        le_d: vec![],
        intentions: BTreeSet::new(),
    };
    let n = worlds.len();
    let nodes = g.nodes();
    (0..n)
        .map(|w| {
            (0..n)
                .map(|v| {
                    (0..nodes.len()).all(|k| {
                        (!o.prop(v, &nodes[k]) || o.prop(w, &nodes[k]))
                            || (0..nodes.len())
                                .any(|j| g.outranks(j, k) && o.prop(w, &nodes[j]) && !o.prop(v, &nodes[j]))
                    })
                })
                .collect()
        })
        .collect()
}

/// Reflexive-transitive closure by repeated squaring until stable.
pub fn closure(mut m: Vec<Vec<bool>>) -> Vec<Vec<bool>> {
    let n = m.len();
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = true;
    }
    loop {
        let mut changed = false;
        for a in 0..n {
            for b in 0..n {
                if !m[a][b] && (0..n).any(|c| m[a][c] && m[c][b]) {
                    m[a][b] = true;
                    changed = true;
                }
            }
        }
        if !changed {
            return m;
        }
    }
}

pub fn to_preorder(m: &[Vec<bool>]) -> Preorder {
    let n = m.len();
    Preorder::from_relation_unchecked(Relation::from_fn(n, |a, b| m[a][b]))
}

pub fn matrix(o: &Preorder) -> Vec<Vec<bool>> {
    let n = o.size();
    (0..n).map(|a| (0..n).map(|b| o.le(a, b)).collect()).collect()
}

pub fn sig(n_atoms: usize) -> Signature {
    Signature::from_names(ATOMS[..n_atoms].iter().copied()).unwrap()
}

// ---- generators ----

pub fn arb_prop(n_atoms: usize, depth: u32) -> BoxedStrategy<Formula> {
    let leaf = prop_oneof![
        1 => Just(Formula::Top),
        1 => Just(Formula::Bottom),
        6 => (0..n_atoms).prop_map(|i| Formula::atom(ATOMS[i])),
    ];
    leaf.prop_recursive(depth, 24, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
            (inner.clone(), inner).prop_map(|(a, b)| Formula::implies(a, b)),
        ]
    })
    .boxed()
}

fn arb_order_kind() -> impl Strategy<Value = OrderKind> {
    prop_oneof![Just(OrderKind::Plausibility), Just(OrderKind::Desirability)]
}

fn arb_strictness() -> impl Strategy<Value = Strictness> {
    prop_oneof![Just(Strictness::Weak), Just(Strictness::Strict)]
}

fn arb_plan_symbol() -> impl Strategy<Value = PlanSymbol> {
    (0..PLANS.len()).prop_map(|i| PlanSymbol::new(PLANS[i]).unwrap())
}

/// The whole language, with plan symbols drawn from [`PLANS`].
pub fn arb_formula(n_atoms: usize, depth: u32) -> BoxedStrategy<Formula> {
    let leaf = prop_oneof![
        1 => Just(Formula::Top),
        1 => Just(Formula::Bottom),
        5 => (0..n_atoms).prop_map(|i| Formula::atom(ATOMS[i])),
        1 => arb_plan_symbol().prop_map(Formula::Intends),
    ];
    let prop = arb_prop(n_atoms, 2);
    leaf.prop_recursive(depth, 48, 2, move |inner| {
        let attitude = prop_oneof![
            Just(AttitudeKind::Belief),
            Just(AttitudeKind::Goal),
            Just(AttitudeKind::AdmissibleIntention),
            Just(AttitudeKind::Intention),
        ];
        let dyn_op = prop_oneof![
            Just(DynamicOp::Announce),
            arb_order_kind().prop_map(DynamicOp::Upgrade),
            arb_order_kind().prop_map(DynamicOp::Contract),
        ];
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::implies(a, b)),
            inner.clone().prop_map(Formula::universal),
            inner.clone().prop_map(Formula::existential),
            (arb_order_kind(), arb_strictness(), inner.clone()).prop_map(|(o, s, a)| Formula::necessity(o, s, a)),
            (arb_order_kind(), arb_strictness(), inner.clone()).prop_map(|(o, s, a)| Formula::possibility(o, s, a)),
            (arb_order_kind(), inner.clone()).prop_map(|(o, a)| Formula::mu(o, a)),
            (attitude, inner.clone(), inner.clone()).prop_map(|(k, a, b)| Formula::attitude(k, a, b)),
            (dyn_op, prop.clone(), inner.clone()).prop_map(|(op, a, b)| Formula::dynamic(op, a, b)),
            (arb_plan_symbol(), inner).prop_map(|(alpha, b)| Formula::plan(alpha, b)),
        ]
    })
    .boxed()
}

/// Arbitrary preorder on `n` points: either a ranking (total) or the
/// closure of random generator pairs (usually partial).
pub fn arb_matrix(n: usize) -> BoxedStrategy<Vec<Vec<bool>>> {
    let ranked = proptest::collection::vec(0u8..4, n).prop_map(|r| {
        (0..r.len())
            .map(|a| (0..r.len()).map(|b| r[a] <= r[b]).collect())
            .collect()
    });
    let generated = proptest::collection::vec(proptest::bool::weighted(0.2), n * n)
        .prop_map(move |bits| closure((0..n).map(|a| (0..n).map(|b| bits[a * n + b]).collect()).collect()));
    prop_oneof![ranked, generated].boxed()
}

/// Agent model over `n_atoms` atoms with 1..=6 worlds. Valuations are
/// distinct when `injective` is set.
pub fn arb_model(n_atoms: usize, injective: bool) -> BoxedStrategy<AgentModel> {
    arb_model_sized(n_atoms, injective, 6)
}

pub fn arb_model_sized(n_atoms: usize, injective: bool, max_worlds: usize) -> BoxedStrategy<AgentModel> {
    let universe = 1usize << n_atoms;
    let max_worlds = if injective {
        universe.min(max_worlds)
    } else {
        max_worlds
    };
    (1..=max_worlds)
        .prop_flat_map(move |n| {
            let assignments = if injective {
                proptest::sample::subsequence((0..universe as u64).collect::<Vec<_>>(), n).boxed()
            } else {
                proptest::collection::vec(0..universe as u64, n).boxed()
            };
            (assignments, arb_matrix(n), arb_matrix(n))
        })
        .prop_map(move |(assignments, p, d)| {
            let worlds = assignments
                .into_iter()
                .enumerate()
                .map(|(i, a)| (WorldId(i as u32 * 7 + 3), Assignment(a)))
                .collect();
            AgentModel::new(sig(n_atoms), worlds, to_preorder(&p), to_preorder(&d)).unwrap()
        })
        .boxed()
}

fn arb_literal_conj(n_atoms: usize) -> impl Strategy<Value = Formula> {
    proptest::collection::vec(0u8..3, n_atoms).prop_map(|choice| {
        Formula::conjunction(choice.iter().enumerate().filter_map(|(i, c)| match c {
            1 => Some(Formula::atom(ATOMS[i])),
            2 => Some(Formula::not(Formula::atom(ATOMS[i]))),
            _ => None,
        }))
    })
}

/// A library holding every symbol of [`PLANS`].
pub fn arb_library(n_atoms: usize) -> BoxedStrategy<PlanLibrary> {
    proptest::collection::vec((arb_prop(n_atoms, 2), arb_literal_conj(n_atoms)), PLANS.len())
        .prop_map(|plans| {
            PlanLibrary::new(
                plans
                    .into_iter()
                    .zip(PLANS)
                    .map(|((pre, post), name)| {
                        prefagent_core::plans::Plan::new(PlanSymbol::new(name).unwrap(), pre, post).unwrap()
                    })
                    .collect(),
            )
            .unwrap()
        })
        .boxed()
}

/// Priority graph with up to `max_nodes` distinct propositional nodes.
/// Edges only run down a random linear extension, so they never cycle.
pub fn arb_graph(n_atoms: usize, max_nodes: usize) -> BoxedStrategy<PriorityGraph> {
    proptest::collection::btree_set(arb_prop(n_atoms, 2), 0..=max_nodes)
        .prop_flat_map(|nodes| {
            let n = nodes.len();
            let order: Vec<usize> = (0..n).collect();
            (
                Just(nodes.into_iter().collect::<Vec<_>>()),
                Just(order).prop_shuffle(),
                proptest::collection::vec(any::<bool>(), n * n),
            )
        })
        .prop_map(|(nodes, order, bits)| {
            let n = nodes.len();
            let mut rank = vec![0; n];
            for (pos, &node) in order.iter().enumerate() {
                rank[node] = pos;
            }
            let edges: Vec<(usize, usize)> = (0..n)
                .flat_map(|i| (0..n).map(move |j| (i, j)))
                .filter(|&(i, j)| rank[i] < rank[j] && bits[i * n + j])
                .collect();
            PriorityGraph::new(nodes, &edges).unwrap()
        })
        .boxed()
}

/// Agent program over `n_atoms` atoms whose knowledge base has a model.
pub fn arb_program(n_atoms: usize) -> BoxedStrategy<AgentProgram> {
    (
        proptest::collection::vec(arb_prop(n_atoms, 1), 0..=2),
        arb_graph(n_atoms, 4),
        arb_graph(n_atoms, 4),
        proptest::collection::btree_set(arb_plan_symbol(), 0..=PLANS.len()),
    )
        .prop_filter_map("knowledge has no model", move |(k, b, d, i)| {
            AgentProgram::new(sig(n_atoms), k, b, d, i).ok()
        })
        .boxed()
}

/// Any subset of [`PLANS`].
pub fn arb_intentions() -> BoxedStrategy<BTreeSet<PlanSymbol>> {
    proptest::collection::btree_set(arb_plan_symbol(), 0..=PLANS.len()).boxed()
}
