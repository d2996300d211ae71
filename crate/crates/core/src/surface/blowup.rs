use serde::{Deserialize, Serialize};

use super::{MonomialElement, QuatShape, SurfaceBase, Symbol2D};
use crate::error::{Error, Result};

/// The two affine charts of the blow-up of the closed point. In `Q1` the
/// new coordinates are `(pi, t)` with `delta = t pi`; in `Q2` they are
/// `(t, delta)` with `pi = t delta`. The chart variable takes the place of
/// the coordinate it replaces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Chart {
    Q1,
    Q2,
}

impl Chart {
    pub fn substitution(&self) -> &'static str {
        match self {
            Chart::Q1 => "delta = t*pi",
            Chart::Q2 => "pi = t*delta",
        }
    }

    pub fn apply(&self, x: &MonomialElement) -> MonomialElement {
        match self {
            Chart::Q1 => MonomialElement::new(x.nonsquare, x.exp_pi + x.exp_delta, x.exp_delta),
            Chart::Q2 => MonomialElement::new(x.nonsquare, x.exp_pi, x.exp_pi + x.exp_delta),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlowUp {
    pub chart: Chart,
    pub symbol: Symbol2D,
    pub shape: QuatShape,
    pub lambda: MonomialElement,
}

/// Rewrites `s` and `lambda` in the chart coordinates, dropping squares.
pub fn blow_up(k: &SurfaceBase, s: &Symbol2D, lambda: &MonomialElement, chart: Chart) -> Result<BlowUp> {
    let sub = Symbol2D::new(chart.apply(&s.left).square_reduced(), chart.apply(&s.right).square_reduced());
    let (shape, symbol) = k.classify_quaternion(&sub)?;
    Ok(BlowUp { chart, symbol, shape, lambda: chart.apply(lambda).square_reduced() })
}

/// `lambda` is `w`, `w pi` or `w delta` up to squares, and a symbol of
/// shape `(u, v pi delta)` comes with a non-unit `lambda`.
pub fn satisfies_leaf_predicate(shape: QuatShape, lambda: &MonomialElement) -> bool {
    let l = lambda.square_reduced();
    if l.exp_pi == 1 && l.exp_delta == 1 {
        return false;
    }
    !(shape == QuatShape::PiDeltaMixed && l.is_unit())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChartNode {
    pub path: String,
    pub depth: u32,
    pub substitution: Option<String>,
    pub symbol: Symbol2D,
    pub shape: QuatShape,
    pub lambda: MonomialElement,
    pub leaf: bool,
    pub children: Vec<ChartNode>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChartTree {
    pub root: ChartNode,
}

impl ChartTree {
    /// Nodes in pre-order, `Q1` before `Q2`.
    pub fn nodes(&self) -> Vec<&ChartNode> {
        fn walk<'a>(n: &'a ChartNode, out: &mut Vec<&'a ChartNode>) {
            out.push(n);
            for c in &n.children {
                walk(c, out);
            }
        }
        let mut out = Vec::new();
        walk(&self.root, &mut out);
        out
    }

    pub fn leaves(&self) -> Vec<&ChartNode> {
        self.nodes().into_iter().filter(|n| n.leaf).collect()
    }

    pub fn depth(&self) -> u32 {
        self.nodes().iter().map(|n| n.depth).max().unwrap_or(0)
    }
}

/// Blows up every chart violating the leaf predicate until none does.
pub fn normalize_model(k: &SurfaceBase, s: &Symbol2D, lambda: &MonomialElement, max_depth: u32) -> Result<ChartTree> {
    if max_depth == 0 {
        return Err(Error::MalformedRequest("maxDepth must be at least 1".into()));
    }
    let (shape, symbol) = k.classify_quaternion(s)?;
    let root = grow(k, "root".into(), 0, None, symbol, shape, lambda.square_reduced(), max_depth)?;
    Ok(ChartTree { root })
}

#[allow(clippy::too_many_arguments)]
fn grow(
    k: &SurfaceBase,
    path: String,
    depth: u32,
    substitution: Option<String>,
    symbol: Symbol2D,
    shape: QuatShape,
    lambda: MonomialElement,
    max_depth: u32,
) -> Result<ChartNode> {
    let leaf = satisfies_leaf_predicate(shape, &lambda);
    let mut children = Vec::new();
    if !leaf {
        if depth >= max_depth {
            return Err(Error::DepthExceeded(max_depth));
        }
        for chart in [Chart::Q1, Chart::Q2] {
            let b = blow_up(k, &symbol, &lambda, chart)?;
            children.push(grow(
                k,
                format!("{path}/{chart:?}"),
                depth + 1,
                Some(chart.substitution().into()),
                b.symbol,
                b.shape,
                b.lambda,
                max_depth,
            )?);
        }
    }
    Ok(ChartNode { path, depth, substitution, symbol, shape, lambda, leaf, children })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(ns: bool, a: i32, b: i32) -> MonomialElement {
        MonomialElement::new(ns, a, b)
    }

    #[test]
    fn mixed_symbol_becomes_unit_parameter_on_both_charts() {
        let k = SurfaceBase::new(3).unwrap();
        let s = Symbol2D::new(m(true, 0, 0), m(false, 1, 1));
        let q1 = blow_up(&k, &s, &m(false, 0, 0), Chart::Q1).unwrap();
        assert_eq!(q1.symbol, Symbol2D::new(m(true, 0, 0), m(false, 0, 1)));
        let q2 = blow_up(&k, &s, &m(false, 0, 0), Chart::Q2).unwrap();
        assert_eq!(q2.symbol, Symbol2D::new(m(true, 0, 0), m(false, 1, 0)));
        let l = blow_up(&k, &s, &m(true, 1, 1), Chart::Q1).unwrap().lambda;
        assert_eq!(l, m(true, 0, 1));
    }

    #[test]
    fn blow_up_preserves_specialized_symbols() {
        for p in [3, 5, 7] {
            let k = SurfaceBase::new(p).unwrap();
            for s in super::super::all_small_symbols() {
                let q1 = blow_up(&k, &s, &m(false, 0, 0), Chart::Q1).unwrap().symbol;
                for c in [false, true] {
                    // t = c on the Q1 chart is the line delta = c pi
                    let after = k.specialized_hilbert(&Symbol2D::new(
                        m(q1.left.nonsquare ^ (c && q1.left.exp_delta % 2 == 1), q1.left.exp_pi, 0),
                        m(q1.right.nonsquare ^ (c && q1.right.exp_delta % 2 == 1), q1.right.exp_pi, 0),
                    ), false);
                    assert_eq!(k.specialized_hilbert(&s, c), after);
                }
            }
        }
    }

    #[test]
    fn normal_models_for_all_root_configurations() {
        let k = SurfaceBase::new(5).unwrap();
        let shapes = [
            Symbol2D::new(m(false, 0, 0), m(false, 0, 0)),
            Symbol2D::new(m(true, 0, 0), m(false, 1, 0)),
            Symbol2D::new(m(true, 0, 0), m(false, 0, 1)),
            Symbol2D::new(m(false, 1, 0), m(true, 0, 1)),
            Symbol2D::new(m(true, 0, 0), m(false, 1, 1)),
        ];
        for s in shapes {
            for l in [m(true, 0, 0), m(true, 1, 0), m(true, 0, 1), m(true, 1, 1)] {
                let t = normalize_model(&k, &s, &l, 3).unwrap();
                assert!(t.depth() <= 1);
                for leaf in t.leaves() {
                    assert!(satisfies_leaf_predicate(leaf.shape, &leaf.lambda));
                }
            }
        }
        let t = normalize_model(&k, &shapes[0], &m(true, 0, 0), 3).unwrap();
        assert_eq!(t.nodes().len(), 1);
        let t = normalize_model(&k, &shapes[4], &m(true, 0, 0), 3).unwrap();
        assert_eq!(t.nodes().len(), 3);
        assert!(t.leaves().iter().all(|n| matches!(n.shape, QuatShape::UnitPi | QuatShape::UnitDelta)));
    }
}
