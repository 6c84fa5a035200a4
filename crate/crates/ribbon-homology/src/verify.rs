//! Verification batteries with machine-readable reports.
//!
//! Each driver here runs one identity suite at a configurable desk scale
//! and returns a [`VerifyReport`]: exhaustive suites over graph generators
//! emit one line per generator; the word-algebra batteries (whose case
//! counts run to tens of thousands) emit one summary line per law plus one
//! line per failing case. Every driver is deterministic — same inputs,
//! byte-identical report.

use crate::complex::{
    build_slice, enumerate_classes, enumerate_classes_oracle, homology_ranks, realized_surfaces,
    slice_boundary, ComplexId, EnumerationRequest,
};
use crate::contraction::{boundary, contract_edge, ContractionOutcome};
use crate::graph::{GraphChain, GraphClass};
use crate::lambda::{deformed_differential, parse_chain, spanning_products};
use crate::scalar::{add_term, q, q_ratio, signed, Q};
use crate::symplectic::{
    bracket, bracket_elements, cobracket, cobracket_element, divergence, field_commutator,
    hamiltonian_field, lie_derivative, monomial_words, odd_count, raw_words, CyclicWord,
    HamiltonianElement, SymplecticSpace, TensorSquareElement, VectorField,
};
use crate::wick::{ReportLine, VerifyReport};
use rayon::prelude::*;
use std::collections::BTreeMap;

fn line(encoding: String, ok: bool, detail: String) -> ReportLine {
    ReportLine { encoding, ok, detail }
}

/// All three complexes in a fixed report order.
pub const ALL_COMPLEXES: [ComplexId; 3] = [ComplexId::Srgc, ComplexId::Krgc, ComplexId::Rgc];

fn enumeration(edges: usize, complex: ComplexId, defect_budget: u32) -> Vec<GraphClass> {
    let mut req = EnumerationRequest::new(edges, complex);
    req.defect_budget = defect_budget;
    enumerate_classes(&req)
}

/// ∂² = 0, generator by generator, in each complex: the boundary within
/// the complex (full contraction sum, non-members projected away) applied
/// twice must vanish. One line per (complex, generator).
pub fn verify_boundary_squares(max_edges: usize, defect_budget: u32) -> VerifyReport {
    let mut lines = Vec::new();
    for complex in ALL_COMPLEXES {
        for e in 1..=max_edges {
            let classes = enumeration(e, complex, defect_budget);
            let batch: Vec<ReportLine> = classes
                .par_iter()
                .map(|class| {
                    let d1 = slice_boundary(complex, class);
                    let mut d2 = GraphChain::zero();
                    for (k, v) in &d1.terms {
                        d2.add_in(&slice_boundary(complex, k).scale(v));
                    }
                    let ok = d2.is_zero();
                    let detail = if ok {
                        format!("d2 = 0 ({} first-boundary terms)", d1.terms.len())
                    } else {
                        let (k, v) = d2.terms.iter().next().unwrap();
                        format!("residue {v} * {}", k.encoding)
                    };
                    line(format!("{complex}:{}", class.encoding), ok, detail)
                })
                .collect();
            lines.extend(batch);
        }
    }
    VerifyReport { lines }
}

/// Contracting any edge of a connected generator leaves the recovered
/// surface type (genus, marked points) unchanged. One line per generator.
pub fn verify_surface_invariance(max_edges: usize, defect_budget: u32) -> VerifyReport {
    let mut lines = Vec::new();
    for e in 1..=max_edges {
        let mut req = EnumerationRequest::new(e, ComplexId::Srgc);
        req.connected = true;
        req.defect_budget = defect_budget;
        let classes = enumerate_classes(&req);
        let batch: Vec<ReportLine> = classes
            .par_iter()
            .map(|class| {
                let g = &class.representative;
                let gn = match g.recover_g_n() {
                    Ok(gn) => gn,
                    Err(err) => {
                        return line(class.encoding.clone(), false, format!("surface type: {err}"))
                    }
                };
                let mut checked = 0usize;
                for &rep in &g.orientation {
                    if let ContractionOutcome::Contracted(h, _) = contract_edge(g, rep) {
                        checked += 1;
                        match h.recover_g_n() {
                            Ok(hn) if hn == gn => {}
                            Ok(hn) => {
                                return line(
                                    class.encoding.clone(),
                                    false,
                                    format!(
                                        "edge {rep}: (g,n) drifts {:?} -> {:?}",
                                        gn, hn
                                    ),
                                )
                            }
                            Err(err) => {
                                return line(
                                    class.encoding.clone(),
                                    false,
                                    format!("edge {rep}: {err}"),
                                )
                            }
                        }
                    }
                }
                line(
                    class.encoding.clone(),
                    true,
                    format!("(g,n) = {gn:?} preserved by {checked} contractions"),
                )
            })
            .collect();
        lines.extend(batch);
    }
    VerifyReport { lines }
}

/// Both sub-family projections commute with the boundary: for every
/// generator x, proj(∂x) = proj(∂(proj x)). For members the two sides
/// agree syntactically; the content is that boundaries of non-members
/// never re-enter the sub-family. One line per (family, generator).
pub fn verify_projections(max_edges: usize, defect_budget: u32) -> VerifyReport {
    type Proj = fn(&GraphChain) -> GraphChain;
    let projections: [(&str, Proj); 2] = [
        ("krgc", crate::contraction::project_krgc),
        ("rgc", crate::contraction::project_rgc),
    ];
    let mut lines = Vec::new();
    for (name, proj) in projections {
        for e in 1..=max_edges {
            let classes = enumeration(e, ComplexId::Srgc, defect_budget);
            let batch: Vec<ReportLine> = classes
                .par_iter()
                .map(|class| {
                    let mut x = GraphChain::zero();
                    x.add_class(class.clone(), q(1));
                    let lhs = proj(&boundary(&x));
                    let rhs = proj(&boundary(&proj(&x)));
                    let ok = lhs == rhs;
                    let detail = if ok {
                        format!("projection commutes ({} projected terms)", lhs.terms.len())
                    } else {
                        let mut diff = lhs;
                        diff.add_in(&rhs.scale(&q(-1)));
                        let (k, v) = diff.terms.iter().next().unwrap();
                        format!("sides differ by {v} * {}", k.encoding)
                    };
                    line(format!("{name}:{}", class.encoding), ok, detail)
                })
                .collect();
            lines.extend(batch);
        }
    }
    VerifyReport { lines }
}

/// D² = 0 for the deformed differential on the spanning set of products
/// with ≤ `max_factors` factors and total word length ≤ `max_total` over
/// ℚ^{d|d}. One line per spanning chain.
pub fn verify_ce_square(dim: u32, max_factors: usize, max_total: usize) -> VerifyReport {
    let space = SymplecticSpace::new(dim);
    let suite = spanning_products(&space, max_factors, max_total);
    let lines: Vec<ReportLine> = suite
        .par_iter()
        .map(|c| {
            let dd = deformed_differential(&space, &deformed_differential(&space, c));
            let ok = dd.is_zero();
            let detail = if ok {
                "D^2 = 0".to_string()
            } else {
                format!("residue {dd}")
            };
            line(format!("{c}"), ok, detail)
        })
        .collect();
    VerifyReport { lines }
}

/// D² = 0 on user-supplied serialized chains, one chain per input line
/// (`#` comments and blank lines skipped). One report line per chain.
pub fn verify_chain_lines(dim: u32, input: &str) -> VerifyReport {
    let space = SymplecticSpace::new(dim);
    let mut lines = Vec::new();
    for raw in input.lines() {
        let text = raw.trim();
        if text.is_empty() || text.starts_with('#') {
            continue;
        }
        match parse_chain(text) {
            Err(err) => lines.push(line(text.to_string(), false, format!("parse error: {err}"))),
            Ok(c) => {
                let dd = deformed_differential(&space, &deformed_differential(&space, &c));
                let ok = dd.is_zero();
                let detail = if ok {
                    "D^2 = 0".to_string()
                } else {
                    format!("residue {dd}")
                };
                lines.push(line(text.to_string(), ok, detail));
            }
        }
    }
    VerifyReport { lines }
}

/// One summary line plus per-case failure lines.
fn law_report(name: &str, cases: usize, scope: &str, mut fails: Vec<ReportLine>) -> Vec<ReportLine> {
    let mut lines = vec![line(
        name.to_string(),
        fails.is_empty(),
        if fails.is_empty() {
            format!("ok on {cases} cases ({scope})")
        } else {
            format!("{} of {cases} cases fail ({scope})", fails.len())
        },
    )];
    lines.append(&mut fails);
    lines
}

/// The bracket against the two-step oracle: {a, b} must equal the Lie
/// derivative of b along the field of a, for all monomial pairs of length
/// ≤ `max_len`. Summary line plus failures.
pub fn verify_bracket_oracle(dim: u32, max_len: usize) -> VerifyReport {
    let sp = SymplecticSpace::new(dim);
    let words = monomial_words(&sp, max_len);
    let fails: Vec<ReportLine> = words
        .par_iter()
        .flat_map_iter(|a| {
            let f = hamiltonian_field(a);
            let sp = &sp;
            words.iter().filter_map(move |b| {
                let direct = bracket(sp, a, b);
                let via_field = lie_derivative(&f, b);
                if direct == via_field {
                    None
                } else {
                    Some(line(
                        format!("bracket-oracle:{a}|{b}"),
                        false,
                        format!("direct {direct} vs field route {via_field}"),
                    ))
                }
            })
        })
        .collect();
    VerifyReport {
        lines: law_report(
            "bracket-oracle",
            words.len() * words.len(),
            &format!("monomial pairs, length <= {max_len}, d = {dim}"),
            fails,
        ),
    }
}

/// The adjoint action of a word on a tensor square:
/// act(x, u⊗v) = {x,u}⊗v + (−1)^{(|x|+1)|u|} u⊗{x,v}.
fn act(sp: &SymplecticSpace, x: &CyclicWord, t: &TensorSquareElement) -> TensorSquareElement {
    let mut out = TensorSquareElement::zero();
    for ((u, v), c) in &t.terms {
        for (w, cw) in bracket(sp, x, u).terms {
            out.add(w, v.clone(), &cw * c);
        }
        for (w, cw) in bracket(sp, x, v).terms {
            out.add(u.clone(), w, signed(&cw * c, (x.parity() + 1) * u.parity()));
        }
    }
    out
}

/// (L_f ⊗ 1 + 1 ⊗ L_f)(t), the operator passing over the left factor at
/// Koszul cost (−1)^{|f||u|}.
fn lie_tensor(f: &VectorField, fpar: usize, t: &TensorSquareElement) -> TensorSquareElement {
    let mut out = TensorSquareElement::zero();
    for ((u, v), c) in &t.terms {
        for (w, cw) in lie_derivative(f, u).terms {
            out.add(w, v.clone(), &cw * c);
        }
        for (w, cw) in lie_derivative(f, v).terms {
            out.add(u.clone(), w, signed(&cw * c, fpar * u.parity()));
        }
    }
    out
}

/// The four structural laws of the bracket/cobracket pair over ℚ^{d|d}:
/// odd Jacobi (triples, length ≤ `jacobi_len`), coJacobi and involutivity
/// (monomials, length ≤ `co_len`), and the bracket–cobracket compatibility
/// cocycle (pairs, total length ≤ `cocycle_total`). One summary line per
/// law plus failures.
pub fn verify_bialgebra(
    dim: u32,
    jacobi_len: usize,
    co_len: usize,
    cocycle_total: usize,
) -> VerifyReport {
    let sp = SymplecticSpace::new(dim);
    let mut lines = Vec::new();

    // Odd Jacobi: {a,{b,c}} = (−1)^{|a|+1}{{a,b},c} + (−1)^{(|a|+1)(|b|+1)}{b,{a,c}}.
    let words = monomial_words(&sp, jacobi_len);
    let fails: Vec<ReportLine> = words
        .par_iter()
        .flat_map_iter(|a| {
            let sp = &sp;
            let words = &words;
            words.iter().flat_map(move |b| {
                let ab = bracket(sp, a, b);
                words.iter().filter_map(move |c| {
                    let lhs = bracket_elements(
                        sp,
                        &HamiltonianElement::single(a.clone()),
                        &bracket(sp, b, c),
                    );
                    let mut rhs = bracket_elements(sp, &ab, &HamiltonianElement::single(c.clone()))
                        .scale(&signed(q(1), a.parity() + 1));
                    rhs.add_in(
                        &bracket_elements(
                            sp,
                            &HamiltonianElement::single(b.clone()),
                            &bracket(sp, a, c),
                        )
                        .scale(&signed(q(1), (a.parity() + 1) * (b.parity() + 1))),
                    );
                    let mut diff = lhs;
                    diff.add_in(&rhs.scale(&q(-1)));
                    if diff.is_zero() {
                        None
                    } else {
                        Some(line(
                            format!("jacobi:{a}|{b}|{c}"),
                            false,
                            format!("defect {diff}"),
                        ))
                    }
                })
            })
        })
        .collect();
    lines.extend(law_report(
        "jacobi",
        words.len().pow(3),
        &format!("triples, length <= {jacobi_len}"),
        fails,
    ));

    // CoJacobi: (1 + τ + τ²)(Δ ⊗ 1)(Δ a) = 0 with the Koszul rotation τ.
    let words = monomial_words(&sp, co_len);
    type Cube = BTreeMap<(CyclicWord, CyclicWord, CyclicWord), Q>;
    let fails: Vec<ReportLine> = words
        .par_iter()
        .filter_map(|a| {
            let mut cube: Cube = Cube::new();
            for ((u, v), c) in &cobracket(&sp, a).terms {
                for ((p, r), c2) in &cobracket(&sp, u).terms {
                    add_term(&mut cube, (p.clone(), r.clone(), v.clone()), c2 * c);
                }
            }
            let mut total: Cube = Cube::new();
            for ((u, v, w), c) in &cube {
                let (pu, pv, pw) = (u.parity(), v.parity(), w.parity());
                add_term(&mut total, (u.clone(), v.clone(), w.clone()), c.clone());
                add_term(
                    &mut total,
                    (w.clone(), u.clone(), v.clone()),
                    signed(c.clone(), pw * (pu + pv)),
                );
                add_term(
                    &mut total,
                    (v.clone(), w.clone(), u.clone()),
                    signed(c.clone(), pu * (pv + pw)),
                );
            }
            if total.is_empty() {
                None
            } else {
                let ((u, v, w), c) = total.iter().next().unwrap();
                Some(line(
                    format!("cojacobi:{a}"),
                    false,
                    format!("residue {c} * {u} (x) {v} (x) {w}"),
                ))
            }
        })
        .collect();
    lines.extend(law_report(
        "cojacobi",
        words.len(),
        &format!("monomials, length <= {co_len}"),
        fails,
    ));

    // Involutivity: bracket ∘ cobracket = 0.
    let fails: Vec<ReportLine> = words
        .par_iter()
        .filter_map(|a| {
            let mut total = HamiltonianElement::zero();
            for ((u, v), c) in &cobracket(&sp, a).terms {
                total.add_in(&bracket(&sp, u, v).scale(c));
            }
            if total.is_zero() {
                None
            } else {
                Some(line(
                    format!("involutivity:{a}"),
                    false,
                    format!("residue {total}"),
                ))
            }
        })
        .collect();
    lines.extend(law_report(
        "involutivity",
        words.len(),
        &format!("monomials, length <= {co_len}"),
        fails,
    ));

    // Cocycle: Δ({x,y}) = (−1)^{|x|+1}[act(x,Δy) − (−1)^{(|x|+1)(|y|+1)}act(y,Δx)].
    let words = monomial_words(&sp, cocycle_total.saturating_sub(1));
    let pairs: Vec<(&CyclicWord, &CyclicWord)> = words
        .iter()
        .flat_map(|x| words.iter().map(move |y| (x, y)))
        .filter(|(x, y)| !x.is_empty() && !y.is_empty() && x.len() + y.len() <= cocycle_total)
        .collect();
    let fails: Vec<ReportLine> = pairs
        .par_iter()
        .filter_map(|(x, y)| {
            let lhs = cobracket_element(&sp, &bracket(&sp, x, y));
            let mut rhs = act(&sp, x, &cobracket(&sp, y));
            rhs.add_in(
                &act(&sp, y, &cobracket(&sp, x))
                    .scale(&signed(q(-1), (x.parity() + 1) * (y.parity() + 1))),
            );
            let rhs = rhs.scale(&signed(q(1), x.parity() + 1));
            let mut diff = lhs;
            diff.add_in(&rhs.scale(&q(-1)));
            if diff.is_zero() {
                None
            } else {
                Some(line(
                    format!("cocycle:{x}|{y}"),
                    false,
                    format!("defect {diff}"),
                ))
            }
        })
        .collect();
    lines.extend(law_report(
        "cocycle",
        pairs.len(),
        &format!("pairs, total length <= {cocycle_total}"),
        fails,
    ));

    VerifyReport { lines }
}

/// The divergence laws: ∇ of a commutator of fields expands by the
/// Leibniz-type formula (monomial fields with coefficient words of length
/// ≤ `field_len`), and the cobracket agrees with the −½·∇∘(Hamiltonian
/// field) route on monomials of length ≤ `route_len`. Summary lines plus
/// failures.
pub fn verify_divergence(dim: u32, field_len: usize, route_len: usize) -> VerifyReport {
    let sp = SymplecticSpace::new(dim);
    let mut lines = Vec::new();

    let mut fields: Vec<(VectorField, usize)> = Vec::new();
    for w in raw_words(&sp, field_len) {
        for z in sp.letters() {
            let mut f = VectorField::zero();
            let p = (odd_count(&w) + z.parity()) % 2;
            f.add(w.clone(), z, q(1));
            fields.push((f, p));
        }
    }
    let fails: Vec<ReportLine> = fields
        .par_iter()
        .enumerate()
        .flat_map_iter(|(i, (xi, pxi))| {
            let div_xi = divergence(xi);
            let fields = &fields;
            fields.iter().enumerate().filter_map(move |(j, (ga, pga))| {
                let lhs = divergence(&field_commutator(xi, ga));
                let mut rhs = lie_tensor(xi, *pxi, &divergence(ga));
                rhs.add_in(&lie_tensor(ga, *pga, &div_xi).scale(&signed(q(-1), pxi * pga)));
                let mut diff = lhs;
                diff.add_in(&rhs.scale(&q(-1)));
                if diff.is_zero() {
                    None
                } else {
                    Some(line(
                        format!("divergence-commutator:#{i}|#{j}"),
                        false,
                        format!("fields ({xi}) and ({ga}) disagree by {diff}"),
                    ))
                }
            })
        })
        .collect();
    lines.extend(law_report(
        "divergence-commutator",
        fields.len() * fields.len(),
        &format!("monomial fields, coefficient length <= {field_len}"),
        fails,
    ));

    let words = monomial_words(&sp, route_len);
    let fails: Vec<ReportLine> = words
        .par_iter()
        .filter_map(|a| {
            let direct = cobracket(&sp, a);
            let via_field = divergence(&hamiltonian_field(a)).scale(&q_ratio(-1, 2));
            if direct == via_field {
                None
            } else {
                Some(line(
                    format!("cobracket-route:{a}"),
                    false,
                    format!("direct {direct} vs -1/2 divergence route {via_field}"),
                ))
            }
        })
        .collect();
    lines.extend(law_report(
        "cobracket-route",
        words.len(),
        &format!("monomials, length <= {route_len}"),
        fails,
    ));

    VerifyReport { lines }
}

/// The generator enumerator against the brute-force oracle that sweeps
/// all pairings: canonical encodings must agree as sets, per complex and
/// edge count. One line per (complex, edge count).
pub fn verify_enumerator_oracle(max_edges: usize, defect_budget: u32) -> VerifyReport {
    let mut lines = Vec::new();
    for complex in ALL_COMPLEXES {
        for e in 1..=max_edges {
            let mut req = EnumerationRequest::new(e, complex);
            req.defect_budget = defect_budget;
            let fast: Vec<String> = enumerate_classes(&req)
                .into_iter()
                .map(|c| c.encoding)
                .collect();
            let slow: Vec<String> = enumerate_classes_oracle(&req)
                .into_iter()
                .map(|c| c.encoding)
                .collect();
            let ok = fast == slow;
            let detail = if ok {
                format!("{} classes from both routes", fast.len())
            } else {
                let only_fast: Vec<&String> = fast.iter().filter(|s| !slow.contains(s)).collect();
                let only_slow: Vec<&String> = slow.iter().filter(|s| !fast.contains(s)).collect();
                format!(
                    "{} vs {} classes; first extras: {:?} / {:?}",
                    fast.len(),
                    slow.len(),
                    only_fast.first(),
                    only_slow.first()
                )
            };
            lines.push(line(format!("{complex}:edges={e}"), ok, detail));
        }
    }
    VerifyReport { lines }
}

/// Homology of every realized (complex, genus, marked) slice up to
/// `max_edges`: the sparse eliminator must match the dense oracle rank
/// for rank, and the alternating sums of betti numbers and of dimensions
/// must agree. One line per slice. `max_complexity`, when set, keeps only
/// surfaces with 2g + n at most that value — the dense oracle is
/// quadratic-space in the basis and the unrestricted degree-4 bases run
/// past 90 000 classes.
pub fn verify_homology_oracle(
    max_edges: usize,
    defect_budget: u32,
    max_complexity: Option<i64>,
) -> VerifyReport {
    let surfaces: Vec<(i64, i64)> = realized_surfaces(max_edges, defect_budget)
        .into_iter()
        .filter(|&(g, n)| max_complexity.map_or(true, |cap| 2 * g + n <= cap))
        .collect();
    let jobs: Vec<(ComplexId, (i64, i64))> = ALL_COMPLEXES
        .iter()
        .flat_map(|&c| surfaces.iter().map(move |&s| (c, s)))
        .collect();
    let lines: Vec<ReportLine> = jobs
        .par_iter()
        .map(|&(complex, (g, n))| {
            let slice = build_slice(complex, Some((g, n)), true, max_edges, defect_budget);
            let sparse = homology_ranks(&slice, false);
            let dense = homology_ranks(&slice, true);
            let dims: Vec<usize> = sparse.rows.iter().map(|r| r.1).collect();
            let enc = format!("{complex}:g={g},n={n}");
            if sparse != dense {
                return line(
                    enc,
                    false,
                    format!("sparse {:?} vs dense {:?}", sparse.rows, dense.rows),
                );
            }
            if sparse.euler_from_betti() != sparse.euler_from_dims() {
                return line(
                    enc,
                    false,
                    format!(
                        "euler mismatch: betti route {} vs dimension route {}",
                        sparse.euler_from_betti(),
                        sparse.euler_from_dims()
                    ),
                );
            }
            line(
                enc,
                true,
                format!("dims {dims:?}, euler {}", sparse.euler_from_dims()),
            )
        })
        .collect();
    VerifyReport { lines }
}

/// One row of the cell-count Euler table: the connected generator counts
/// per edge degree for a fixed surface type, and their edge-alternating
/// sum Σ_E (−1)^E · count(E).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerRow {
    pub genus: i64,
    pub marked: i64,
    /// counts[e-1] = number of basis classes with e edges.
    pub counts: Vec<usize>,
    pub alternating_sum: i64,
}

/// Cell-count Euler table of one complex: connected, non-flagged
/// generators counted per edge degree up to `max_edges`, one row per
/// surface type. Rows are the surface types discovered by the
/// budget-bounded sweep ([`realized_surfaces`]); each row's counts come
/// from the exact surface-filtered enumeration (the same bases a
/// homology slice uses), so they are independent of the budget. Rows
/// sorted by (genus, marked); all-zero rows are dropped.
pub fn euler_cell_table(complex: ComplexId, max_edges: usize, defect_budget: u32) -> Vec<EulerRow> {
    let surfaces = realized_surfaces(max_edges, defect_budget);
    let rows: Vec<((i64, i64), Vec<usize>)> = surfaces
        .par_iter()
        .map(|&(g, n)| {
            let counts: Vec<usize> = (1..=max_edges)
                .map(|e| {
                    let req = EnumerationRequest::new(e, complex).with_surface(g, n);
                    enumerate_classes(&req).len()
                })
                .collect();
            ((g, n), counts)
        })
        .collect();
    rows.into_iter()
        .filter(|(_, counts)| counts.iter().any(|&c| c > 0))
        .map(|((g, n), counts)| {
            let alternating_sum = counts
                .iter()
                .enumerate()
                .map(|(i, &c)| {
                    let e = i + 1;
                    if e % 2 == 0 {
                        c as i64
                    } else {
                        -(c as i64)
                    }
                })
                .sum();
            EulerRow {
                genus: g,
                marked: n,
                counts,
                alternating_sum,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph_batteries_pass_at_two_edges() {
        assert!(verify_boundary_squares(2, 2).all_ok());
        assert!(verify_surface_invariance(2, 2).all_ok());
        assert!(verify_projections(2, 2).all_ok());
        assert!(verify_enumerator_oracle(2, 2).all_ok());
    }

    #[test]
    fn word_batteries_pass_at_small_bounds() {
        assert!(verify_bracket_oracle(2, 2).all_ok());
        assert!(verify_bialgebra(2, 2, 2, 3).all_ok());
        assert!(verify_divergence(2, 1, 2).all_ok());
        assert!(verify_ce_square(2, 2, 4).all_ok());
    }

    #[test]
    fn chain_line_battery_reports_parse_errors_and_residues() {
        let input = "\
# a comment, then a valid chain, then garbage
1 * gamma^1 * nu^0 * (x1.xi1 | x2.xi2)
not a chain
";
        let report = verify_chain_lines(2, input);
        assert_eq!(report.lines.len(), 2);
        assert!(report.lines[0].ok, "valid chain must verify: {}", report.lines[0].detail);
        assert!(!report.lines[1].ok);
        assert!(report.lines[1].detail.contains("parse error"));
    }

    #[test]
    fn homology_battery_passes_at_two_edges() {
        let unrestricted = verify_homology_oracle(2, 2, None);
        assert!(unrestricted.all_ok());
        let capped = verify_homology_oracle(2, 2, Some(4));
        assert!(capped.all_ok());
        assert!(capped.lines.len() < unrestricted.lines.len());
    }

    #[test]
    fn euler_table_matches_slice_dimensions() {
        for complex in ALL_COMPLEXES {
            for row in euler_cell_table(complex, 3, 2) {
                let slice = build_slice(complex, Some((row.genus, row.marked)), true, 3, 2);
                let dims: Vec<usize> = (1..=3).map(|k| slice.bases[k].len()).collect();
                assert_eq!(row.counts, dims, "{complex} (g,n)=({},{})", row.genus, row.marked);
                let table = homology_ranks(&slice, false);
                assert_eq!(row.alternating_sum, table.euler_from_dims());
            }
        }
    }
}
