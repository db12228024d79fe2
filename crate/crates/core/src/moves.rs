//! Contraction moves on cyclically reduced graphs and their inverse expansions.
//!
//! Contractions delete vertices without renaming the survivors, so their
//! output is weakly labeled and unrooted. Expansions take a normalized graph
//! plus the data that was forgotten and rebuild the normalized original.

use std::fmt;

use crate::graph::{Graph, Label};
use crate::types::TypeDelta;

/// Orientation or pairing choice carried by the two-vertex expansions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn from_value(x: i64) -> Option<Sign> {
        match x {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MoveError {
    #[error("moves only apply to cyclically reduced graphs")]
    NotCyclicallyReduced,
    #[error("move needs at least {need} vertices, graph has {got}")]
    TooSmall { need: usize, got: usize },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("expansion input must be normalized")]
    NotNormalized,
    #[error("parameter out of range: {0}")]
    BadParameter(String),
}

fn fail<T>(msg: impl Into<String>) -> Result<T, MoveError> {
    Err(MoveError::Precondition(msg.into()))
}

/// One rewriting step.
///
/// `Lambda21`: `v` carries an a-loop on a b-triangle and `w_prime` is
/// `b_next(v)`. `Lambda22`: `eps = Plus` means the isolated b-edge is `v -> w`.
/// `Kappa3`: the isolated b-edge is `v -> w`, with a-mates `v_prime`, `w_prime`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Move {
    Lambda3 { v: Label, w: Label },
    Lambda21 { v: Label, w_prime: Label },
    Lambda22 { v: Label, w: Label, w_prime: Label, eps: Sign },
    Kappa3 { v: Label, w: Label, v_prime: Label, w_prime: Label },
    ExcDelta1,
    ExcDelta3,
    ExcDelta2,
}

impl Move {
    pub fn delta(&self) -> TypeDelta {
        match self {
            Move::Lambda3 { .. } => TypeDelta::LAMBDA3,
            Move::Lambda21 { .. } => TypeDelta::LAMBDA21,
            Move::Lambda22 { .. } => TypeDelta::LAMBDA22,
            Move::Kappa3 { .. } => TypeDelta::KAPPA3,
            Move::ExcDelta3 => TypeDelta::EXCEPTIONAL,
            Move::ExcDelta1 | Move::ExcDelta2 => TypeDelta::ZERO,
        }
    }

    pub fn apply(&self, g: &Graph) -> Result<Graph, MoveError> {
        match *self {
            Move::Lambda3 { v, w } => apply_lambda3(g, v, w),
            Move::Lambda21 { v, w_prime } => {
                if g.b_next(v) != Some(w_prime) {
                    return fail(format!("b-edge {v} -> {w_prime} missing"));
                }
                apply_lambda21(g, v)
            }
            Move::Lambda22 { v, w, w_prime, eps } => {
                let oriented = match eps {
                    Sign::Plus => g.b_next(v) == Some(w),
                    Sign::Minus => g.b_next(w) == Some(v),
                };
                if !oriented {
                    return fail(format!("b-edge between {v} and {w} has the other orientation"));
                }
                apply_lambda22(g, v, w, w_prime)
            }
            Move::Kappa3 { v, w, v_prime, w_prime } => apply_kappa3(g, v, w, v_prime, w_prime),
            Move::ExcDelta1 | Move::ExcDelta2 | Move::ExcDelta3 => {
                let (m, out) = exceptional(g).ok_or_else(|| {
                    MoveError::Precondition("no exceptional move applies".into())
                })?;
                if m != *self {
                    return fail(format!("graph admits {m}, not {self}"));
                }
                Ok(out)
            }
        }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Move::Lambda3 { v, w } => write!(f, "lambda3 v={v} w={w}"),
            Move::Lambda21 { v, w_prime } => write!(f, "lambda21 v={v} w'={w_prime}"),
            Move::Lambda22 { v, w, w_prime, eps } => {
                let arrow = if *eps == Sign::Plus { "->" } else { "<-" };
                write!(f, "lambda22 v={v} {arrow} w={w} w'={w_prime}")
            }
            Move::Kappa3 { v, w, v_prime, w_prime } => {
                write!(f, "kappa3 v={v} -> w={w} v'={v_prime} w'={w_prime}")
            }
            Move::ExcDelta1 => write!(f, "exceptional delta1"),
            Move::ExcDelta3 => write!(f, "exceptional delta3"),
            Move::ExcDelta2 => write!(f, "exceptional delta2"),
        }
    }
}

fn check_cyclic(g: &Graph, need: usize) -> Result<(), MoveError> {
    if !g.is_cyclically_reduced() {
        return Err(MoveError::NotCyclicallyReduced);
    }
    if g.size() < need {
        return Err(MoveError::TooSmall { need, got: g.size() });
    }
    Ok(())
}

/// The isolated b-edge at `v` as `(other end, v is the source)`.
fn isolated_b_neighbour(g: &Graph, v: Label) -> Option<(Label, bool)> {
    match (g.b_prev(v), g.b_next(v)) {
        (None, Some(w)) => Some((w, true)),
        (Some(u), None) => Some((u, false)),
        _ => None,
    }
}

fn unrooted(g: &Graph) -> Graph {
    let mut out = g.clone();
    out.set_root(None);
    out
}

pub fn apply_lambda3(g: &Graph, v: Label, w: Label) -> Result<Graph, MoveError> {
    check_cyclic(g, 2)?;
    if !g.has_b_loop(v) {
        return fail(format!("vertex {v} has no b-loop"));
    }
    if g.a_mate(v) != Some(w) {
        return fail(format!("no isolated a-edge {{{v},{w}}}"));
    }
    let mut out = unrooted(g);
    out.remove_vertex(v);
    out.set_a_loop(w);
    Ok(out)
}

pub fn apply_lambda21(g: &Graph, v: Label) -> Result<Graph, MoveError> {
    check_cyclic(g, 3)?;
    if !g.has_a_loop(v) {
        return fail(format!("vertex {v} has no a-loop"));
    }
    if !g.on_b_triangle(v) {
        return fail(format!("vertex {v} is not on a b-triangle"));
    }
    let mut out = unrooted(g);
    out.remove_vertex(v);
    Ok(out)
}

pub fn apply_lambda22(g: &Graph, v: Label, w: Label, w_prime: Label) -> Result<Graph, MoveError> {
    check_cyclic(g, 3)?;
    if !g.has_a_loop(v) {
        return fail(format!("vertex {v} has no a-loop"));
    }
    match isolated_b_neighbour(g, v) {
        Some((x, _)) if x == w => {}
        _ => return fail(format!("no isolated b-edge between {v} and {w}")),
    }
    if g.a_mate(w) != Some(w_prime) || w_prime == v {
        return fail(format!("no isolated a-edge {{{w},{w_prime}}}"));
    }
    let mut out = unrooted(g);
    out.remove_vertex(v);
    out.remove_vertex(w);
    out.set_a_loop(w_prime);
    Ok(out)
}

pub fn apply_kappa3(
    g: &Graph,
    v: Label,
    w: Label,
    v_prime: Label,
    w_prime: Label,
) -> Result<Graph, MoveError> {
    check_cyclic(g, 4)?;
    if g.b_next(v) != Some(w) || g.b_next(w).is_some() {
        return fail(format!("no isolated b-edge {v} -> {w}"));
    }
    if g.a_mate(v) != Some(v_prime) || g.a_mate(w) != Some(w_prime) {
        return fail("endpoints of the b-edge must carry the given isolated a-edges");
    }
    if v_prime == w || v_prime == w_prime {
        return fail("the four vertices must be distinct");
    }
    let mut out = unrooted(g);
    out.remove_vertex(v);
    out.remove_vertex(w);
    out.set_a_edge(v_prime, w_prime);
    Ok(out)
}

fn exceptional(g: &Graph) -> Option<(Move, Graph)> {
    let labels: Vec<Label> = g.labels().collect();
    match labels[..] {
        [x] if g.has_a_loop(x) && g.has_b_loop(x) && x != 1 => Some((Move::ExcDelta1, Graph::delta1())),
        [x, y] if g.has_a_loop(x) && g.has_a_loop(y) && g.b_arcs().count() == 1 => {
            Some((Move::ExcDelta3, Graph::delta1()))
        }
        [x, y] if g.a_mate(x) == Some(y) && g.b_arcs().count() == 1 => {
            let preferred = Graph::delta2();
            (unrooted(g) != preferred).then_some((Move::ExcDelta2, preferred))
        }
        _ => None,
    }
}

pub fn apply_exceptional(g: &Graph) -> Result<Graph, MoveError> {
    exceptional(g)
        .map(|(_, out)| out)
        .ok_or_else(|| MoveError::Precondition("no exceptional move applies".into()))
}

/// Moves of the highest-priority applicable family whose anchor vertex is `v`.
fn moves_at(g: &Graph, v: Label, family: u8, out: &mut Vec<Move>) {
    match family {
        0 => {
            if g.has_b_loop(v) {
                if let Some(w) = g.a_mate(v) {
                    out.push(Move::Lambda3 { v, w });
                }
            }
        }
        1 => {
            if !g.has_a_loop(v) {
                return;
            }
            if g.on_b_triangle(v) && g.size() >= 3 {
                out.push(Move::Lambda21 { v, w_prime: g.b_next(v).unwrap() });
            } else if let Some((w, forward)) = isolated_b_neighbour(g, v) {
                if let Some(w_prime) = g.a_mate(w) {
                    let eps = if forward { Sign::Plus } else { Sign::Minus };
                    out.push(Move::Lambda22 { v, w, w_prime, eps });
                }
            }
        }
        2 => {
            let Some(w) = g.b_next(v) else { return };
            if g.b_next(w).is_some() {
                return;
            }
            if let (Some(v_prime), Some(w_prime)) = (g.a_mate(v), g.a_mate(w)) {
                if v_prime != w && v_prime != w_prime {
                    out.push(Move::Kappa3 { v, w, v_prime, w_prime });
                }
            }
        }
        _ => {}
    }
}

/// Every applicable move, grouped by family (λ3, λ2, κ3, exceptional) and
/// ascending by anchor vertex within a family. Empty on graphs that are not
/// cyclically reduced.
pub fn enumerate_moves(g: &Graph) -> Vec<Move> {
    let mut out = Vec::new();
    if !g.is_cyclically_reduced() {
        return out;
    }
    for family in 0..3 {
        for v in g.labels() {
            moves_at(g, v, family, &mut out);
        }
    }
    if let Some((m, _)) = exceptional(g) {
        out.push(m);
    }
    out
}

/// First move in [`enumerate_moves`] order, found without listing the rest.
pub fn first_move(g: &Graph) -> Option<Move> {
    if !g.is_cyclically_reduced() {
        return None;
    }
    let mut buf = Vec::with_capacity(1);
    for family in 0..3 {
        for v in g.labels() {
            moves_at(g, v, family, &mut buf);
            if let Some(&m) = buf.first() {
                return Some(m);
            }
        }
    }
    exceptional(g).map(|(m, _)| m)
}

pub fn shift_v(x: Label, v: Label) -> Label {
    if x < v {
        x
    } else {
        x + 1
    }
}

pub fn shift_vw(x: Label, v: Label, w: Label) -> Label {
    let (lo, hi) = (v.min(w), v.max(w));
    if x < lo {
        x
    } else if x + 1 < hi {
        x + 1
    } else {
        x + 2
    }
}

fn check_expansion_input(d: &Graph) -> Result<u32, MoveError> {
    if !d.is_normalized() {
        return Err(MoveError::NotNormalized);
    }
    Ok(d.size() as u32)
}

fn check_pair(v: Label, w: Label, m: u32) -> Result<(), MoveError> {
    if v == w || !(1..=m + 2).contains(&v) || !(1..=m + 2).contains(&w) {
        return Err(MoveError::BadParameter(format!(
            "need distinct v, w in 1..={}, got {v}, {w}",
            m + 2
        )));
    }
    Ok(())
}

// In-place grafts shared with the sampler; fresh labels must be absent.

pub(crate) fn graft_lambda3(g: &mut Graph, aloop_at: Label, v: Label) {
    g.clear_a(aloop_at);
    g.insert_vertex(v);
    g.set_b_loop(v);
    g.set_a_edge(v, aloop_at);
}

pub(crate) fn graft_lambda21(g: &mut Graph, from: Label, to: Label, v: Label) {
    g.insert_vertex(v);
    g.set_a_loop(v);
    g.set_b_arc(to, v);
    g.set_b_arc(v, from);
}

pub(crate) fn graft_lambda22(g: &mut Graph, aloop_at: Label, v: Label, w: Label, eps: Sign) {
    g.clear_a(aloop_at);
    g.insert_vertex(v);
    g.insert_vertex(w);
    g.set_a_loop(v);
    g.set_a_edge(w, aloop_at);
    match eps {
        Sign::Plus => g.set_b_arc(v, w),
        Sign::Minus => g.set_b_arc(w, v),
    }
}

/// `lo < hi` are the ends of the a-edge being split.
pub(crate) fn graft_kappa3(g: &mut Graph, lo: Label, hi: Label, v: Label, w: Label, eps: Sign) {
    g.clear_a(lo);
    g.insert_vertex(v);
    g.insert_vertex(w);
    g.set_b_arc(v, w);
    let (mv, mw) = if eps == Sign::Plus { (lo, hi) } else { (hi, lo) };
    g.set_a_edge(v, mv);
    g.set_a_edge(w, mw);
}

/// Inverse of a λ3 contraction: new vertex `v` with a b-loop, joined by an
/// a-edge to the former a-loop vertex.
pub fn expand_lambda3(d: &Graph, aloop_at: Label, v: Label) -> Result<Graph, MoveError> {
    let m = check_expansion_input(d)?;
    if !d.has_a_loop(aloop_at) {
        return fail(format!("vertex {aloop_at} has no a-loop"));
    }
    if !(1..=m + 1).contains(&v) {
        return Err(MoveError::BadParameter(format!("v = {v} not in 1..={}", m + 1)));
    }
    let mut g = d.relabel_unchecked(|x| shift_v(x, v));
    graft_lambda3(&mut g, shift_v(aloop_at, v), v);
    Ok(g)
}

/// Inverse of a λ2,1 contraction: the isolated b-edge leaving `bedge_from`
/// is completed to a triangle through new vertex `v`, which gets an a-loop.
pub fn expand_lambda21(d: &Graph, bedge_from: Label, v: Label) -> Result<Graph, MoveError> {
    let m = check_expansion_input(d)?;
    let to = match d.b_next(bedge_from) {
        Some(to) if d.b_next(to).is_none() => to,
        _ => return fail(format!("no isolated b-edge leaves {bedge_from}")),
    };
    if !(1..=m + 1).contains(&v) {
        return Err(MoveError::BadParameter(format!("v = {v} not in 1..={}", m + 1)));
    }
    let mut g = d.relabel_unchecked(|x| shift_v(x, v));
    graft_lambda21(&mut g, shift_v(bedge_from, v), shift_v(to, v), v);
    Ok(g)
}

/// Inverse of a λ2,2 contraction.
pub fn expand_lambda22(
    d: &Graph,
    aloop_at: Label,
    v: Label,
    w: Label,
    eps: Sign,
) -> Result<Graph, MoveError> {
    let m = check_expansion_input(d)?;
    if !d.has_a_loop(aloop_at) {
        return fail(format!("vertex {aloop_at} has no a-loop"));
    }
    check_pair(v, w, m)?;
    let mut g = d.relabel_unchecked(|x| shift_vw(x, v, w));
    graft_lambda22(&mut g, shift_vw(aloop_at, v, w), v, w, eps);
    Ok(g)
}

/// Inverse of a κ3 contraction. `eps = Plus` attaches `v` to the smaller end
/// of `aedge`, `Minus` to the larger.
pub fn expand_kappa3(
    d: &Graph,
    aedge: (Label, Label),
    v: Label,
    w: Label,
    eps: Sign,
) -> Result<Graph, MoveError> {
    let m = check_expansion_input(d)?;
    let (lo, hi) = (aedge.0.min(aedge.1), aedge.0.max(aedge.1));
    if lo == hi || d.a_mate(lo) != Some(hi) {
        return fail(format!("no isolated a-edge {{{lo},{hi}}}"));
    }
    check_pair(v, w, m)?;
    let mut g = d.relabel_unchecked(|x| shift_vw(x, v, w));
    graft_kappa3(&mut g, shift_vw(lo, v, w), shift_vw(hi, v, w), v, w, eps);
    Ok(g)
}

/// Position of `x` among the labels of `g`, counting from 1.
fn rank(g: &Graph, x: Label) -> Label {
    g.labels().take_while(|&y| y < x).count() as Label + 1
}

fn check_contraction_input(g: &Graph) -> Result<(), MoveError> {
    if !g.is_normalized() {
        return Err(MoveError::NotNormalized);
    }
    Ok(())
}

/// λ3 contraction at the b-loop vertex `v`, normalized, with the data
/// [`expand_lambda3`] needs to undo it: `(delta, aloop_at, v)`.
pub fn contract_lambda3(g: &Graph, v: Label) -> Result<(Graph, Label, Label), MoveError> {
    check_contraction_input(g)?;
    let w = g.a_mate(v).ok_or_else(|| MoveError::Precondition(format!("{v} has no a-mate")))?;
    let d = apply_lambda3(g, v, w)?;
    Ok((d.normalize(), rank(&d, w), v))
}

/// λ2,1 contraction at `v`: `(delta, bedge_from, v)`.
pub fn contract_lambda21(g: &Graph, v: Label) -> Result<(Graph, Label, Label), MoveError> {
    check_contraction_input(g)?;
    let d = apply_lambda21(g, v)?;
    let w_prime = g.b_next(v).expect("checked by apply");
    Ok((d.normalize(), rank(&d, w_prime), v))
}

/// λ2,2 contraction at the a-loop vertex `v`: `(delta, aloop_at, v, w, eps)`.
pub fn contract_lambda22(
    g: &Graph,
    v: Label,
) -> Result<(Graph, Label, Label, Label, Sign), MoveError> {
    check_contraction_input(g)?;
    let (w, forward) = isolated_b_neighbour(g, v)
        .ok_or_else(|| MoveError::Precondition(format!("{v} has no isolated b-edge")))?;
    let w_prime =
        g.a_mate(w).ok_or_else(|| MoveError::Precondition(format!("{w} has no a-mate")))?;
    let d = apply_lambda22(g, v, w, w_prime)?;
    let eps = if forward { Sign::Plus } else { Sign::Minus };
    Ok((d.normalize(), rank(&d, w_prime), v, w, eps))
}

/// κ3 contraction on the isolated b-edge leaving `v`:
/// `(delta, aedge, v, w, eps)` with `eps = Plus` iff `a_mate(v) < a_mate(w)`.
pub fn contract_kappa3(
    g: &Graph,
    v: Label,
) -> Result<(Graph, (Label, Label), Label, Label, Sign), MoveError> {
    check_contraction_input(g)?;
    let w = g.b_next(v).ok_or_else(|| MoveError::Precondition(format!("no b-edge leaves {v}")))?;
    let (v_prime, w_prime) = match (g.a_mate(v), g.a_mate(w)) {
        (Some(a), Some(b)) => (a, b),
        _ => return fail("endpoints of the b-edge must carry isolated a-edges"),
    };
    let d = apply_kappa3(g, v, w, v_prime, w_prime)?;
    let eps = if v_prime < w_prime { Sign::Plus } else { Sign::Minus };
    let (lo, hi) = (v_prime.min(w_prime), v_prime.max(w_prime));
    Ok((d.normalize(), (rank(&d, lo), rank(&d, hi)), v, w, eps))
}
