//! Edge contraction on stable ribbon graphs, the boundary operator it
//! generates, and the two sub-family projections.
//!
//! Contracting an edge removes its two half-edges and splices the cycle
//! structure around them. Three shapes occur — the edge joins two
//! different vertices, joins two different cycles of one vertex, or has
//! both ends in a single cycle — and in each shape an arc that comes up
//! empty converts into a boundary defect. A vertex that would be left
//! with no cycles at all blocks the contraction; the corresponding
//! boundary term is zero.

use crate::graph::{GraphChain, StableRibbonGraph, Vertex};
use crate::scalar::{signed, Q};

/// The result of contracting one edge.
#[derive(Clone, Debug)]
pub enum ContractionOutcome {
    /// The contracted graph together with the orientation sign (±1)
    /// induced by moving the contracted edge to the front of the order.
    Contracted(StableRibbonGraph, i64),
    /// The edge cannot be contracted; the boundary term is zero.
    NonContractible,
}

/// Locate a half-edge: (vertex index, cycle index, position in cycle).
fn locate(g: &StableRibbonGraph, h: usize) -> (usize, usize, usize) {
    for (vi, v) in g.vertices.iter().enumerate() {
        for (ci, cyc) in v.cycles.iter().enumerate() {
            if let Some(p) = cyc.iter().position(|&x| x == h) {
                return (vi, ci, p);
            }
        }
    }
    panic!("half-edge {h} not found");
}

/// The arc of `cycle` starting just after position `p`, wrapping, and
/// excluding the element at `p` itself.
fn arc_after(cycle: &[usize], p: usize) -> Vec<usize> {
    let l = cycle.len();
    (1..l).map(|k| cycle[(p + k) % l]).collect()
}

/// The arc of `cycle` strictly between positions `p` and `q`, walking
/// forward from `p`.
fn arc_between(cycle: &[usize], p: usize, q: usize) -> Vec<usize> {
    let l = cycle.len();
    let mut out = Vec::new();
    let mut k = (p + 1) % l;
    while k != q {
        out.push(cycle[k]);
        k = (k + 1) % l;
    }
    out
}

/// Contract the edge named by half-edge representative `e` (its lesser
/// half). Panics if `e` is not an edge representative of `g`.
pub fn contract_edge(g: &StableRibbonGraph, e: usize) -> ContractionOutcome {
    let pos = g
        .orientation
        .iter()
        .position(|&r| r == e)
        .unwrap_or_else(|| panic!("{e} is not an edge of the graph"));
    let sign = if pos % 2 == 0 { 1 } else { -1 };
    let a = e;
    let b = g.sigma1[e];
    let (va, ca, pa) = locate(g, a);
    let (vb, cb, pb) = locate(g, b);

    let mut vertices = g.vertices.clone();
    if va != vb {
        // Edge joins two vertices: merge them. The merged cycle reads
        // a's cycle from just after a, then b's cycle from just after b.
        let mut merged_arc = arc_after(&vertices[va].cycles[ca], pa);
        merged_arc.extend(arc_after(&vertices[vb].cycles[cb], pb));
        let mut cycles = Vec::new();
        for (ci, cyc) in vertices[va].cycles.iter().enumerate() {
            if ci != ca {
                cycles.push(cyc.clone());
            }
        }
        for (ci, cyc) in vertices[vb].cycles.iter().enumerate() {
            if ci != cb {
                cycles.push(cyc.clone());
            }
        }
        let mut n = vertices[va].boundary_defect + vertices[vb].boundary_defect;
        let genus = vertices[va].genus_defect + vertices[vb].genus_defect;
        if merged_arc.is_empty() {
            n += 1;
        } else {
            cycles.push(merged_arc);
        }
        if cycles.is_empty() {
            return ContractionOutcome::NonContractible;
        }
        let merged = Vertex {
            cycles,
            genus_defect: genus,
            boundary_defect: n,
        };
        let (lo, hi) = (va.min(vb), va.max(vb));
        vertices.remove(hi);
        vertices[lo] = merged;
    } else if ca != cb {
        // Loop joining two distinct cycles of one vertex: coalesce them
        // and raise the genus defect.
        let v = &mut vertices[va];
        let mut merged_arc = arc_after(&v.cycles[ca], pa);
        merged_arc.extend(arc_after(&v.cycles[cb], pb));
        let mut cycles = Vec::new();
        for (ci, cyc) in v.cycles.iter().enumerate() {
            if ci != ca && ci != cb {
                cycles.push(cyc.clone());
            }
        }
        v.genus_defect += 1;
        if merged_arc.is_empty() {
            v.boundary_defect += 1;
        } else {
            cycles.push(merged_arc);
        }
        if cycles.is_empty() {
            return ContractionOutcome::NonContractible;
        }
        v.cycles = cycles;
    } else {
        // Loop with both ends in one cycle: the cycle splits into the two
        // arcs strictly between the endpoints; an empty arc becomes a
        // boundary defect instead of a cycle.
        let v = &mut vertices[va];
        let arc1 = arc_between(&v.cycles[ca], pa, pb);
        let arc2 = arc_between(&v.cycles[ca], pb, pa);
        let mut cycles = Vec::new();
        for (ci, cyc) in v.cycles.iter().enumerate() {
            if ci != ca {
                cycles.push(cyc.clone());
            }
        }
        for arc in [arc1, arc2] {
            if arc.is_empty() {
                v.boundary_defect += 1;
            } else {
                cycles.push(arc);
            }
        }
        if cycles.is_empty() {
            return ContractionOutcome::NonContractible;
        }
        v.cycles = cycles;
    }

    // Compact the half-edge labels: a and b disappear.
    let n_old = g.half_edges();
    let mut new_label = vec![usize::MAX; n_old];
    let mut next = 0usize;
    for h in 0..n_old {
        if h != a && h != b {
            new_label[h] = next;
            next += 1;
        }
    }
    let mut sigma1 = vec![usize::MAX; next];
    for h in 0..n_old {
        if h != a && h != b {
            sigma1[new_label[h]] = new_label[g.sigma1[h]];
        }
    }
    for v in &mut vertices {
        for cyc in &mut v.cycles {
            for h in cyc.iter_mut() {
                *h = new_label[*h];
            }
        }
    }
    // Remaining edges keep their induced order. Relabeling preserves the
    // order of surviving half-edges, so each old representative maps to
    // the new lesser half directly.
    let orientation: Vec<usize> = g
        .orientation
        .iter()
        .filter(|&&r| r != e)
        .map(|&r| new_label[r])
        .collect();
    let contracted = StableRibbonGraph {
        edges: g.edges - 1,
        sigma1,
        vertices,
        orientation,
    };
    debug_assert!(
        contracted.validate().is_ok(),
        "contraction produced an invalid graph: {} from {} at edge {e}",
        contracted
            .validate()
            .map(|_| String::new())
            .unwrap_or_else(|err| err),
        g.to_record(),
    );
    ContractionOutcome::Contracted(contracted, sign)
}

/// The boundary operator: the signed sum of all edge contractions,
/// extended linearly and canonicalized.
pub fn boundary(chain: &GraphChain) -> GraphChain {
    let mut out = GraphChain::zero();
    for (class, coeff) in &chain.terms {
        let g = &class.representative;
        for &e in &g.orientation {
            if let ContractionOutcome::Contracted(h, s) = contract_edge(g, e) {
                let c = signed(coeff.clone(), if s >= 0 { 0 } else { 1 });
                out.add_graph(&h, c);
            }
        }
    }
    out
}

/// The boundary of a single graph (convenience wrapper).
pub fn boundary_of_graph(g: &StableRibbonGraph) -> GraphChain {
    let mut chain = GraphChain::zero();
    chain.add_graph(g, Q::from_integer(1.into()));
    boundary(&chain)
}

/// Does every vertex have vanishing boundary defect?
pub fn in_kontsevich_family(g: &StableRibbonGraph) -> bool {
    g.vertices.iter().all(|v| v.boundary_defect == 0)
}

/// Is the graph an ordinary ribbon graph: no defects at all and a single
/// cycle at every vertex?
pub fn in_ribbon_family(g: &StableRibbonGraph) -> bool {
    g.vertices
        .iter()
        .all(|v| v.boundary_defect == 0 && v.genus_defect == 0 && v.cycles.len() == 1)
}

/// Projection onto the sub-family with everywhere-vanishing boundary
/// defect: terms outside it are dropped.
pub fn project_krgc(chain: &GraphChain) -> GraphChain {
    let mut out = GraphChain::zero();
    for (class, coeff) in &chain.terms {
        if in_kontsevich_family(&class.representative) {
            out.add_class(class.clone(), coeff.clone());
        }
    }
    out
}

/// Projection onto ordinary ribbon graphs (no defects, single-cycle
/// vertices): terms outside are dropped.
pub fn project_rgc(chain: &GraphChain) -> GraphChain {
    let mut out = GraphChain::zero();
    for (class, coeff) in &chain.terms {
        if in_ribbon_family(&class.representative) {
            out.add_class(class.clone(), coeff.clone());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{
        adjacent_two_loop, canonical_form, interleaved_two_loop, theta_graph,
        twisted_theta_graph,
    };
    use crate::scalar::q;

    #[test]
    fn merging_two_trivalent_vertices() {
        // Contract one edge of the theta graph: the two trivalent
        // vertices merge into one 4-valent single-cycle vertex.
        let g = theta_graph();
        match contract_edge(&g, 0) {
            ContractionOutcome::Contracted(h, s) => {
                assert_eq!(s, 1);
                assert_eq!(h.edges, 2);
                assert_eq!(h.vertices.len(), 1);
                assert_eq!(h.vertices[0].cycles.len(), 1);
                assert_eq!(h.vertices[0].cycles[0].len(), 4);
                assert_eq!(h.vertices[0].genus_defect, 0);
                assert_eq!(h.vertices[0].boundary_defect, 0);
                assert!(h.validate().is_ok());
                assert_eq!(h.recover_g_n().unwrap(), g.recover_g_n().unwrap());
            }
            ContractionOutcome::NonContractible => panic!("theta edge must contract"),
        }
    }

    #[test]
    fn loop_between_cycles_raises_genus() {
        // One vertex, two cycles (0) and (1,2,3) with edges {0,1},{2,3}:
        // contracting {0,1} joins the cycles and raises genus by one.
        let g = StableRibbonGraph::new(
            &[(0, 1), (2, 3)],
            vec![Vertex {
                cycles: vec![vec![0], vec![1, 2, 3]],
                genus_defect: 0,
                boundary_defect: 0,
            }],
        );
        assert!(g.validate().is_ok());
        match contract_edge(&g, 0) {
            ContractionOutcome::Contracted(h, s) => {
                assert_eq!(s, 1);
                assert_eq!(h.vertices.len(), 1);
                assert_eq!(h.vertices[0].genus_defect, 1);
                assert_eq!(h.vertices[0].boundary_defect, 0);
                assert_eq!(h.vertices[0].cycles, vec![vec![0, 1]]);
                assert_eq!(h.recover_g_n().unwrap(), g.recover_g_n().unwrap());
            }
            ContractionOutcome::NonContractible => panic!("must contract"),
        }
    }

    #[test]
    fn tight_loop_with_sibling_cycle_adds_two_boundary_points() {
        // Cycle (0,1) is exactly the loop; the vertex keeps cycle (2,3).
        let g = StableRibbonGraph::new(
            &[(0, 1), (2, 3)],
            vec![Vertex {
                cycles: vec![vec![0, 1], vec![2, 3]],
                genus_defect: 0,
                boundary_defect: 0,
            }],
        );
        assert!(g.validate().is_ok());
        match contract_edge(&g, 0) {
            ContractionOutcome::Contracted(h, _) => {
                assert_eq!(h.vertices[0].boundary_defect, 2);
                assert_eq!(h.vertices[0].cycles, vec![vec![0, 1]]);
                assert_eq!(h.recover_g_n().unwrap(), g.recover_g_n().unwrap());
            }
            ContractionOutcome::NonContractible => panic!("must contract"),
        }
    }

    #[test]
    fn tight_loop_alone_is_non_contractible() {
        // One vertex whose only cycle is the loop itself (stabilized by a
        // boundary defect): the contraction is blocked.
        let g = StableRibbonGraph::new(
            &[(0, 1)],
            vec![Vertex {
                cycles: vec![vec![0, 1]],
                genus_defect: 0,
                boundary_defect: 1,
            }],
        );
        assert!(g.validate().is_ok());
        assert!(matches!(
            contract_edge(&g, 0),
            ContractionOutcome::NonContractible
        ));
        assert!(boundary_of_graph(&g).is_zero());
    }

    #[test]
    fn adjacent_endpoints_add_one_boundary_point() {
        // Adjacent two-loop: contracting loop {0,1} leaves cycle (2,3)
        // and one new boundary defect; result must keep (g,n) = (0,3).
        let g = adjacent_two_loop();
        match contract_edge(&g, 0) {
            ContractionOutcome::Contracted(h, _) => {
                assert_eq!(h.vertices[0].boundary_defect, 1);
                assert_eq!(h.vertices[0].cycles.len(), 1);
                assert_eq!(h.recover_g_n().unwrap(), (0, 3));
            }
            ContractionOutcome::NonContractible => panic!("must contract"),
        }
    }

    #[test]
    fn interleaved_loop_splits_into_two_cycles() {
        // Contracting one edge of the interleaved two-loop splits the
        // 4-cycle into two singleton cycles.
        let g = interleaved_two_loop();
        match contract_edge(&g, 0) {
            ContractionOutcome::Contracted(h, _) => {
                assert_eq!(h.vertices[0].cycles.len(), 2);
                assert!(h.vertices[0].cycles.iter().all(|c| c.len() == 1));
                assert_eq!(h.recover_g_n().unwrap(), (1, 1));
            }
            ContractionOutcome::NonContractible => panic!("must contract"),
        }
    }

    #[test]
    fn boundary_preserves_surface_type_on_named_graphs() {
        for g in [
            theta_graph(),
            twisted_theta_graph(),
            interleaved_two_loop(),
            adjacent_two_loop(),
        ] {
            let want = g.recover_g_n().unwrap();
            for &e in &g.orientation {
                if let ContractionOutcome::Contracted(h, _) = contract_edge(&g, e) {
                    assert_eq!(h.recover_g_n().unwrap(), want);
                }
            }
        }
    }

    #[test]
    fn boundary_squares_to_zero_on_named_graphs() {
        for g in [
            theta_graph(),
            twisted_theta_graph(),
            interleaved_two_loop(),
            adjacent_two_loop(),
        ] {
            let d = boundary_of_graph(&g);
            let dd = boundary(&d);
            assert!(dd.is_zero(), "∂² ≠ 0 for {}: {}", g.to_record(), dd);
        }
    }

    #[test]
    fn projections_filter_terms() {
        let mut chain = GraphChain::zero();
        chain.add_graph(&twisted_theta_graph(), q(1));
        // A graph with a boundary defect: loop with defect.
        let defected = StableRibbonGraph::new(
            &[(0, 1)],
            vec![Vertex {
                cycles: vec![vec![0, 1]],
                genus_defect: 0,
                boundary_defect: 1,
            }],
        );
        chain.add_graph(&defected, q(1));
        assert_eq!(chain.terms.len(), 2);
        let k = project_krgc(&chain);
        assert_eq!(k.terms.len(), 1);
        let r = project_rgc(&chain);
        assert_eq!(r.terms.len(), 1);
        let (cls, _) = canonical_form(&twisted_theta_graph());
        assert!(k.terms.contains_key(&cls));
        assert!(r.terms.contains_key(&cls));
        // A genus defect survives the first projection but not the second.
        let mut g_def = twisted_theta_graph();
        g_def.vertices[0].genus_defect = 1;
        let mut chain2 = GraphChain::zero();
        chain2.add_graph(&g_def, q(1));
        assert_eq!(project_krgc(&chain2).terms.len(), 1);
        assert!(project_rgc(&chain2).is_zero());
    }
}
