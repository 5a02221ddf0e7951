//! Friends-and-strangers graphs: bijections between the vertex sets of two
//! graphs, adjacent when they differ by one swap along an edge of the first
//! graph whose images form an edge of the second. Includes the structural
//! checks connecting their components to double-flip classes and the
//! label-shift isomorphism chain between components.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::labeling::{all_labelings, factorial, Labeling};
use crate::orient::{double_flip_classes, flip_classes, induced_orientation, nu};
use crate::Caps;

/// Bijections `V(X) -> V(Y)` are encoded as labelings: the label `l` on an
/// X-vertex means the Y-vertex `l - 1`.
///
/// Two bijections are adjacent when they differ in exactly two positions
/// `u, v` with `{u, v}` an edge of `x` and their images an edge of `y`.
pub fn fs_adjacent(x: &Graph, y: &Graph, a: &Labeling, b: &Labeling) -> Result<bool> {
    if x.n() != y.n() {
        return Err(Error::SizeMismatch {
            graph_n: x.n(),
            labeling_n: y.n(),
        });
    }
    for side in [a, b] {
        if side.n() != x.n() {
            return Err(Error::SizeMismatch {
                graph_n: x.n(),
                labeling_n: side.n(),
            });
        }
    }
    let mut diff = [0usize; 2];
    let mut count = 0;
    for v in 0..x.n() {
        if a.label(v) != b.label(v) {
            if count == 2 {
                return Ok(false);
            }
            diff[count] = v;
            count += 1;
        }
    }
    if count != 2 {
        return Ok(false);
    }
    let (u, v) = (diff[0], diff[1]);
    // With both sides bijections and all other positions equal, the two
    // differing values are necessarily swapped.
    debug_assert!(a.label(u) == b.label(v) && a.label(v) == b.label(u));
    Ok(x.has_edge(u, v) && y.has_edge(a.label(u) - 1, a.label(v) - 1))
}

fn check_fs_cap(n: usize, caps: &Caps) -> Result<()> {
    if n > caps.max_fs_n {
        return Err(Error::CapExceeded {
            what: "friends-and-strangers vertex count",
            requested: n,
            cap: caps.max_fs_n,
        });
    }
    Ok(())
}

fn components_by_moves<F>(n: usize, neighbors: F) -> Vec<Vec<Labeling>>
where
    F: Fn(&Labeling, &mut Vec<Labeling>),
{
    let total = factorial(n);
    let mut seen = vec![false; total as usize];
    let mut components = Vec::new();
    let mut scratch = Vec::new();
    for start in 0..total {
        if seen[start as usize] {
            continue;
        }
        seen[start as usize] = true;
        let mut ranks = vec![start];
        let mut queue = vec![Labeling::from_rank(n, start)];
        while let Some(sigma) = queue.pop() {
            scratch.clear();
            neighbors(&sigma, &mut scratch);
            for next in scratch.drain(..) {
                let r = next.rank();
                if !seen[r as usize] {
                    seen[r as usize] = true;
                    ranks.push(r);
                    queue.push(next);
                }
            }
        }
        ranks.sort_unstable();
        components.push(ranks.into_iter().map(|r| Labeling::from_rank(n, r)).collect());
    }
    components
}

/// Connected components of the friends-and-strangers graph of `x` and `y`,
/// each listed in rank order, components ordered by smallest member.
pub fn fs_components(x: &Graph, y: &Graph, caps: &Caps) -> Result<Vec<Vec<Labeling>>> {
    if x.n() != y.n() {
        return Err(Error::SizeMismatch {
            graph_n: x.n(),
            labeling_n: y.n(),
        });
    }
    check_fs_cap(x.n(), caps)?;
    Ok(components_by_moves(x.n(), |sigma, out| {
        for &(u, v) in x.edges() {
            if y.has_edge(sigma.label(u) - 1, sigma.label(v) - 1) {
                let mut next = sigma.clone();
                next.swap_vertices(u, v);
                out.push(next);
            }
        }
    }))
}

/// Components of the labelings of `g` under the indexed toggles, i.e. the
/// friends-and-strangers components for `x = complement(g)` and `y` the
/// cycle on label space. Works directly with toggle moves.
pub fn toggle_components(g: &Graph, caps: &Caps) -> Result<Vec<Vec<Labeling>>> {
    let n = g.n();
    check_fs_cap(n, caps)?;
    Ok(components_by_moves(n, |sigma, out| {
        for i in 1..=n {
            let (a, b) = if i == n { (n, 1) } else { (i, i + 1) };
            if n < 2 {
                continue;
            }
            let u = sigma.vertex_with(a);
            let v = sigma.vertex_with(b);
            if !g.has_edge(u, v) && u != v {
                let mut next = sigma.clone();
                next.swap_labels(a, b);
                out.push(next);
            }
        }
    }))
}

/// Outcome of comparing the toggle-component partition of labelings with
/// the partition by double-flip class of the induced orientation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorrespondenceReport {
    pub graph: String,
    pub n: usize,
    pub components: usize,
    pub classes: usize,
    pub pass: bool,
    pub mismatch: Option<String>,
}

/// Checks that labelings share a toggle component exactly when their
/// induced orientations share a double-flip class.
pub fn verify_component_correspondence(g: &Graph, caps: &Caps) -> Result<CorrespondenceReport> {
    let n = g.n();
    let components = toggle_components(g, caps)?;
    let dfc = double_flip_classes(g, caps)?;
    let total = factorial(n) as usize;

    let mut comp_of = vec![usize::MAX; total];
    for (c, block) in components.iter().enumerate() {
        for sigma in block {
            comp_of[sigma.rank() as usize] = c;
        }
    }
    let mut class_of = vec![usize::MAX; total];
    for (r, sigma) in all_labelings(n).enumerate() {
        class_of[r] = dfc
            .class_of(&induced_orientation(g, &sigma))
            .expect("induced orientation is acyclic");
    }

    let mut comp_to_class = vec![usize::MAX; components.len()];
    let mut class_to_comp = vec![usize::MAX; dfc.len()];
    let mut mismatch = None;
    for r in 0..total {
        let (c, d) = (comp_of[r], class_of[r]);
        if comp_to_class[c] == usize::MAX {
            comp_to_class[c] = d;
        } else if comp_to_class[c] != d && mismatch.is_none() {
            mismatch = Some(format!(
                "labeling {} shares a component with class {} but lies in class {}",
                Labeling::from_rank(n, r as u64),
                comp_to_class[c],
                d
            ));
        }
        if class_to_comp[d] == usize::MAX {
            class_to_comp[d] = c;
        } else if class_to_comp[d] != c && mismatch.is_none() {
            mismatch = Some(format!(
                "labeling {} shares a class with component {} but lies in component {}",
                Labeling::from_rank(n, r as u64),
                class_to_comp[d],
                c
            ));
        }
    }

    Ok(CorrespondenceReport {
        graph: g.descriptor(),
        n,
        components: components.len(),
        classes: dfc.len(),
        pass: mismatch.is_none(),
        mismatch,
    })
}

/// Outcome of searching for the shift-isomorphism chain between the
/// components inside each flip class. The orderings list double-flip class
/// indices in the order the unit label shift maps one onto the next.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentCycleReport {
    pub graph: String,
    pub n: usize,
    pub nu: usize,
    pub orderings: Vec<Vec<usize>>,
    pub pass: bool,
    pub detail: Option<String>,
}

/// Verifies that inside each flip class the double-flip classes arrange in
/// one cycle along which the unit label shift maps each extension set onto
/// the next while preserving toggle adjacency both ways.
pub fn verify_component_cycle(g: &Graph, caps: &Caps) -> Result<ComponentCycleReport> {
    let n = g.n();
    check_fs_cap(n, caps)?;
    let dfc = double_flip_classes(g, caps)?;
    let flips = flip_classes(g, caps)?;
    let total = factorial(n) as usize;
    let expected_nu = nu(g);

    let fail = |detail: String, orderings: Vec<Vec<usize>>| ComponentCycleReport {
        graph: g.descriptor(),
        n,
        nu: expected_nu,
        orderings,
        pass: false,
        detail: Some(detail),
    };

    // Extension sets per double-flip class, as sorted rank vectors.
    let mut ext: Vec<Vec<u64>> = vec![Vec::new(); dfc.len()];
    let mut shift_rank = vec![0u64; total];
    for (r, sigma) in all_labelings(n).enumerate() {
        let d = dfc
            .class_of(&induced_orientation(g, &sigma))
            .expect("induced orientation is acyclic");
        ext[d].push(r as u64);
        shift_rank[r] = crate::ops::cyclic_shift(&sigma, 1).rank();
    }

    // The unit shift must carry each extension set exactly onto another.
    let mut successor = vec![usize::MAX; dfc.len()];
    for d in 0..dfc.len() {
        let mut image: Vec<u64> = ext[d].iter().map(|&r| shift_rank[r as usize]).collect();
        image.sort_unstable();
        match (0..dfc.len()).find(|&e| ext[e] == image) {
            Some(e) => successor[d] = e,
            None => {
                return Ok(fail(
                    format!("shift image of class {d} extensions is not a class extension set"),
                    Vec::new(),
                ))
            }
        }
    }

    // Toggle adjacency must be equivariant under the shift.
    for (r, sigma) in all_labelings(n).enumerate() {
        let mut shifted_neighbors: Vec<u64> = toggle_neighbor_ranks(g, &sigma)
            .into_iter()
            .map(|nr| shift_rank[nr as usize])
            .collect();
        shifted_neighbors.sort_unstable();
        let of_shifted = toggle_neighbor_ranks(g, &Labeling::from_rank(n, shift_rank[r]));
        if shifted_neighbors != of_shifted {
            return Ok(fail(
                format!(
                    "shift does not preserve toggle adjacency at labeling {}",
                    Labeling::from_rank(n, r as u64)
                ),
                Vec::new(),
            ));
        }
    }

    // Group double-flip classes by flip class and walk the successor cycle.
    let mut flip_of = vec![usize::MAX; dfc.len()];
    for (d, class) in dfc.classes().iter().enumerate() {
        let f = flips.class_of(&class[0]).expect("flip classes cover all");
        for alpha in class {
            if flips.class_of(alpha) != Some(f) {
                return Ok(fail(
                    format!("double-flip class {d} straddles flip classes"),
                    Vec::new(),
                ));
            }
        }
        flip_of[d] = f;
    }

    let mut orderings = Vec::new();
    for f in 0..flips.len() {
        let members: Vec<usize> = (0..dfc.len()).filter(|&d| flip_of[d] == f).collect();
        if members.len() != expected_nu {
            return Ok(fail(
                format!(
                    "flip class {f} contains {} double-flip classes, expected {expected_nu}",
                    members.len()
                ),
                orderings,
            ));
        }
        let start = members[0];
        let mut cycle = vec![start];
        let mut current = successor[start];
        while current != start {
            if !members.contains(&current) || cycle.len() > members.len() {
                return Ok(fail(
                    format!("successor walk escapes flip class {f}"),
                    orderings,
                ));
            }
            cycle.push(current);
            current = successor[current];
        }
        if cycle.len() != members.len() {
            return Ok(fail(
                format!(
                    "successor cycle in flip class {f} covers {} of {} classes",
                    cycle.len(),
                    members.len()
                ),
                orderings,
            ));
        }
        orderings.push(cycle);
    }

    Ok(ComponentCycleReport {
        graph: g.descriptor(),
        n,
        nu: expected_nu,
        orderings,
        pass: true,
        detail: None,
    })
}

fn toggle_neighbor_ranks(g: &Graph, sigma: &Labeling) -> Vec<u64> {
    let n = g.n();
    let mut out = Vec::new();
    if n >= 2 {
        for i in 1..=n {
            let (a, b) = if i == n { (n, 1) } else { (i, i + 1) };
            let u = sigma.vertex_with(a);
            let v = sigma.vertex_with(b);
            if !g.has_edge(u, v) && u != v {
                let mut next = sigma.clone();
                next.swap_labels(a, b);
                out.push(next.rank());
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// Outcome of checking that inversion maps the friends-and-strangers graph
/// of `(x, y)` isomorphically onto that of `(y, x)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InversionReport {
    pub n: usize,
    pub pairs_checked: u64,
    pub pass: bool,
    pub counterexample: Option<String>,
}

/// Confirms `sigma -> sigma^{-1}` preserves adjacency in both directions,
/// over all ordered pairs of bijections. Quadratic in `n!`.
pub fn inversion_isomorphism_check(x: &Graph, y: &Graph, caps: &Caps) -> Result<InversionReport> {
    if x.n() != y.n() {
        return Err(Error::SizeMismatch {
            graph_n: x.n(),
            labeling_n: y.n(),
        });
    }
    let n = x.n();
    check_fs_cap(n, caps)?;
    let bijections: Vec<Labeling> = all_labelings(n).collect();
    let inverted: Vec<Labeling> = bijections.iter().map(|b| b.inverted()).collect();
    let mut pairs_checked = 0u64;
    for (i, a) in bijections.iter().enumerate() {
        for (j, b) in bijections.iter().enumerate().skip(i + 1) {
            pairs_checked += 1;
            let forward = fs_adjacent(x, y, a, b)?;
            let backward = fs_adjacent(y, x, &inverted[i], &inverted[j])?;
            if forward != backward {
                return Ok(InversionReport {
                    n,
                    pairs_checked,
                    pass: false,
                    counterexample: Some(format!(
                        "bijections {a} and {b}: adjacency {forward} vs inverted {backward}"
                    )),
                });
            }
        }
    }
    Ok(InversionReport {
        n,
        pairs_checked,
        pass: true,
        counterexample: None,
    })
}
