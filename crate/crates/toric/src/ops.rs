//! Operators on labelings: toggles, promotion, toric promotion and its
//! generalizations, cyclic label shifts, and jeu-de-taquin slides, together
//! with the slide-path constructions and the factored power evaluation that
//! make the operator identities runnable.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::labeling::Labeling;

fn check_sizes(g: &Graph, sigma: &Labeling) {
    assert_eq!(
        g.n(),
        sigma.n(),
        "graph has {} vertices but labeling has {}",
        g.n(),
        sigma.n()
    );
}

/// The pair of labels swapped by the indexed toggle: `i < n` means
/// `(i, i + 1)`, and index `n` wraps to `(n, 1)`.
fn tau_pair(i: usize, n: usize) -> (usize, usize) {
    if i == n {
        (n, 1)
    } else {
        (i, i + 1)
    }
}

fn toggle_in_place(g: &Graph, sigma: &mut Labeling, i: usize, j: usize) {
    let u = sigma.vertex_with(i);
    let v = sigma.vertex_with(j);
    if !g.has_edge(u, v) {
        sigma.swap_labels(i, j);
    }
}

/// Swaps labels `i` and `j` when they sit on nonadjacent vertices; the
/// identity when the vertices are adjacent. An involution.
pub fn toggle(g: &Graph, sigma: &Labeling, i: usize, j: usize) -> Result<Labeling> {
    check_sizes(g, sigma);
    let n = g.n();
    for label in [i, j] {
        if !(1..=n).contains(&label) {
            return Err(Error::LabelOutOfRange { label, n });
        }
    }
    if i == j {
        return Err(Error::ToggleLabelsEqual(i));
    }
    let mut out = sigma.clone();
    toggle_in_place(g, &mut out, i, j);
    Ok(out)
}

fn promotion_in_place(g: &Graph, sigma: &mut Labeling) {
    let n = g.n();
    for i in 1..n {
        toggle_in_place(g, sigma, i, i + 1);
    }
}

/// The consecutive-toggle sweep: toggles `(1,2)`, `(2,3)`, ..., `(n-1,n)`
/// applied in that order. The identity on a single vertex.
pub fn promotion(g: &Graph, sigma: &Labeling) -> Labeling {
    check_sizes(g, sigma);
    let mut out = sigma.clone();
    promotion_in_place(g, &mut out);
    out
}

/// Promotion followed by the wrap-around toggle of labels `n` and `1`.
/// Needs `n >= 2` so the wrap toggle involves two distinct labels.
pub fn toric_promotion(g: &Graph, sigma: &Labeling) -> Result<Labeling> {
    check_sizes(g, sigma);
    let n = g.n();
    if n < 2 {
        return Err(Error::TooFewVertices { needed: 2, n });
    }
    let mut out = sigma.clone();
    promotion_in_place(g, &mut out);
    toggle_in_place(g, &mut out, n, 1);
    Ok(out)
}

fn validate_one_line(pi: &[usize], n: usize) -> Result<()> {
    if pi.len() != n {
        return Err(Error::WrongLength {
            expected: n,
            got: pi.len(),
        });
    }
    let mut seen = vec![false; n];
    for &x in pi {
        if !(1..=n).contains(&x) {
            return Err(Error::LabelOutOfRange { label: x, n });
        }
        if seen[x - 1] {
            return Err(Error::DuplicateLabel(x));
        }
        seen[x - 1] = true;
    }
    Ok(())
}

/// Applies the indexed toggles in the order given by the one-line
/// permutation `pi`: first the toggle indexed `pi[0]`, last `pi[n-1]`.
/// With the identity permutation this is exactly [`toric_promotion`].
pub fn toric_promotion_pi(g: &Graph, pi: &[usize], sigma: &Labeling) -> Result<Labeling> {
    check_sizes(g, sigma);
    let n = g.n();
    if n < 2 {
        return Err(Error::TooFewVertices { needed: 2, n });
    }
    validate_one_line(pi, n)?;
    let mut out = sigma.clone();
    for &idx in pi {
        let (i, j) = tau_pair(idx, n);
        toggle_in_place(g, &mut out, i, j);
    }
    Ok(out)
}

/// The one-line permutation `1 2 .. (n-h) n (n-1) .. (n-h+1)`: the identity
/// with its last `h` entries reversed. Requires `1 <= h <= n/2`.
pub fn zeta_permutation(n: usize, h: usize) -> Result<Vec<usize>> {
    let max = n / 2;
    if h == 0 || h > max {
        return Err(Error::HOutOfRange { h, n, max });
    }
    let mut pi: Vec<usize> = (1..=n - h).collect();
    pi.extend((n - h + 1..=n).rev());
    Ok(pi)
}

/// Adds `k` to every label modulo `n` (any integer `k`, normalized into
/// `1..=n`). Shift by `-k` inverts.
pub fn cyclic_shift(sigma: &Labeling, k: i64) -> Labeling {
    let mut out = sigma.clone();
    out.shift_labels(k);
    out
}

/// Slides the label on the first vertex of `path` along the whole path by
/// successive adjacent swaps. A single-vertex path returns the input.
pub fn jdt_slide(g: &Graph, sigma: &Labeling, path: &[usize]) -> Result<Labeling> {
    check_sizes(g, sigma);
    validate_path(g, path)?;
    let mut out = sigma.clone();
    for w in path.windows(2) {
        out.swap_vertices(w[0], w[1]);
    }
    Ok(out)
}

fn validate_path(g: &Graph, path: &[usize]) -> Result<()> {
    if path.is_empty() {
        return Err(Error::EmptyPath);
    }
    let mut seen = vec![false; g.n()];
    for &v in path {
        if v >= g.n() {
            return Err(Error::VertexOutOfRange { vertex: v, n: g.n() });
        }
        if seen[v] {
            return Err(Error::PathRepeatsVertex(v));
        }
        seen[v] = true;
    }
    for w in path.windows(2) {
        if !g.has_edge(w[0], w[1]) {
            return Err(Error::PathStepNotEdge { u: w[0], v: w[1] });
        }
    }
    Ok(())
}

/// The slide path realizing one application of shift-after-promotion:
/// starting from label 1, repeatedly step to the neighbor carrying the
/// smallest larger label, until no neighbor carries a larger one. Sliding
/// along the returned path equals `cyclic_shift(promotion(sigma), 1)`.
pub fn cpro_path(g: &Graph, sigma: &Labeling) -> Vec<usize> {
    check_sizes(g, sigma);
    let mut current = 1;
    let mut path = vec![sigma.vertex_with(current)];
    loop {
        let v = sigma.vertex_with(current);
        let next = g
            .neighbors(v)
            .iter()
            .map(|&u| sigma.label(u))
            .filter(|&l| l > current)
            .min();
        match next {
            Some(l) => {
                path.push(sigma.vertex_with(l));
                current = l;
            }
            None => return path,
        }
    }
}

fn cpro_in_place(g: &Graph, sigma: &mut Labeling) {
    promotion_in_place(g, sigma);
    sigma.shift_labels(1);
}

/// On a forest, the single path starting at the vertex labeled 1 whose
/// slide realizes `steps` applications of shift-after-promotion at once.
pub fn forest_power_path(g: &Graph, sigma: &Labeling, steps: usize) -> Result<Vec<usize>> {
    check_sizes(g, sigma);
    if !g.is_forest() {
        return Err(Error::NotAForest);
    }
    let start = sigma.vertex_with(1);
    let mut endpoint = start;
    let mut current = sigma.clone();
    for _ in 0..steps {
        let p = cpro_path(g, &current);
        endpoint = *p.last().expect("slide path is nonempty");
        cpro_in_place(g, &mut current);
    }
    g.tree_path(start, endpoint)
}

/// Evaluates the factored form of the `(n-1)s + k`-th toric promotion
/// power: `ns + k` shift-after-promotion steps, a shift by `-k`, then the
/// toggles indexed `n-k+1, ..., n` in that order. Defined for
/// `0 <= k <= n-2`.
pub fn factored_tpro_power(g: &Graph, sigma: &Labeling, s: usize, k: usize) -> Result<Labeling> {
    check_sizes(g, sigma);
    let n = g.n();
    if n < 2 {
        return Err(Error::TooFewVertices { needed: 2, n });
    }
    if k > n - 2 {
        return Err(Error::KOutOfRange { k, n, max: n - 2 });
    }
    let mut out = sigma.clone();
    for _ in 0..n * s + k {
        cpro_in_place(g, &mut out);
    }
    out.shift_labels(-(k as i64));
    for idx in n - k + 1..=n {
        let (i, j) = tau_pair(idx, n);
        toggle_in_place(g, &mut out, i, j);
    }
    Ok(out)
}

/// A description of a composed toggle operator, applicable to any graph
/// whose vertex count fits its parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OperatorSpec {
    /// The single toggle of labels `i` and `j`.
    Toggle(usize, usize),
    /// The consecutive-toggle sweep.
    Promotion,
    /// Promotion followed by the wrap-around toggle.
    ToricPromotion,
    /// Indexed toggles applied in the order of a one-line permutation.
    ToricPromotionPi(Vec<usize>),
    /// Add `k` to every label modulo `n`.
    CyclicShift(i64),
    /// Members applied left to right.
    Composition(Vec<OperatorSpec>),
}

impl OperatorSpec {
    /// The empty composition.
    pub fn identity() -> OperatorSpec {
        OperatorSpec::Composition(Vec::new())
    }

    /// Promotion followed by a unit label shift.
    pub fn cpro() -> OperatorSpec {
        OperatorSpec::Composition(vec![OperatorSpec::Promotion, OperatorSpec::CyclicShift(1)])
    }

    /// Toric promotion reordered by the h-tail-reversed identity.
    pub fn zeta(n: usize, h: usize) -> Result<OperatorSpec> {
        Ok(OperatorSpec::ToricPromotionPi(zeta_permutation(n, h)?))
    }

    /// Validates the spec against a vertex count and flattens it into a
    /// primitive move program.
    pub fn compile(&self, n: usize) -> Result<CompiledOp> {
        let mut prims = Vec::new();
        self.push_prims(n, &mut prims)?;
        Ok(CompiledOp { n, prims })
    }

    fn push_prims(&self, n: usize, prims: &mut Vec<Prim>) -> Result<()> {
        match self {
            OperatorSpec::Toggle(i, j) => {
                for &label in [i, j] {
                    if !(1..=n).contains(&label) {
                        return Err(Error::LabelOutOfRange { label, n });
                    }
                }
                if i == j {
                    return Err(Error::ToggleLabelsEqual(*i));
                }
                prims.push(Prim::Toggle(*i, *j));
            }
            OperatorSpec::Promotion => {
                for i in 1..n {
                    prims.push(Prim::Toggle(i, i + 1));
                }
            }
            OperatorSpec::ToricPromotion => {
                if n < 2 {
                    return Err(Error::TooFewVertices { needed: 2, n });
                }
                for i in 1..n {
                    prims.push(Prim::Toggle(i, i + 1));
                }
                prims.push(Prim::Toggle(n, 1));
            }
            OperatorSpec::ToricPromotionPi(pi) => {
                if n < 2 {
                    return Err(Error::TooFewVertices { needed: 2, n });
                }
                validate_one_line(pi, n)?;
                for &idx in pi {
                    let (i, j) = tau_pair(idx, n);
                    prims.push(Prim::Toggle(i, j));
                }
            }
            OperatorSpec::CyclicShift(k) => prims.push(Prim::Shift(*k)),
            OperatorSpec::Composition(parts) => {
                for part in parts {
                    part.push_prims(n, prims)?;
                }
            }
        }
        Ok(())
    }

    /// Compiles for the graph's vertex count and applies once.
    pub fn apply(&self, g: &Graph, sigma: &Labeling) -> Result<Labeling> {
        Ok(self.compile(g.n())?.apply(g, sigma))
    }
}

impl std::fmt::Display for OperatorSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            OperatorSpec::Toggle(i, j) => write!(f, "toggles:{i}-{j}"),
            OperatorSpec::Promotion => f.write_str("pro"),
            OperatorSpec::ToricPromotion => f.write_str("tpro"),
            OperatorSpec::ToricPromotionPi(pi) => {
                let parts: Vec<String> = pi.iter().map(|x| x.to_string()).collect();
                write!(f, "tpro-pi:{}", parts.join(","))
            }
            OperatorSpec::CyclicShift(k) => write!(f, "c:{k}"),
            OperatorSpec::Composition(parts) => {
                if parts.is_empty() {
                    return f.write_str("id");
                }
                if self == &OperatorSpec::cpro() {
                    return f.write_str("cpro");
                }
                let rendered: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
                f.write_str(&rendered.join(";"))
            }
        }
    }
}

#[derive(Clone, Copy, Debug)]
enum Prim {
    Toggle(usize, usize),
    Shift(i64),
}

/// A validated, flattened operator ready for repeated application.
#[derive(Clone, Debug)]
pub struct CompiledOp {
    n: usize,
    prims: Vec<Prim>,
}

impl CompiledOp {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn apply(&self, g: &Graph, sigma: &Labeling) -> Labeling {
        let mut out = sigma.clone();
        self.apply_in_place(g, &mut out);
        out
    }

    pub(crate) fn apply_in_place(&self, g: &Graph, sigma: &mut Labeling) {
        debug_assert_eq!(g.n(), self.n);
        debug_assert_eq!(sigma.n(), self.n);
        for prim in &self.prims {
            match *prim {
                Prim::Toggle(i, j) => toggle_in_place(g, sigma, i, j),
                Prim::Shift(k) => sigma.shift_labels(k),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::GraphFamily;
    use proptest::prelude::*;

    fn path(n: usize) -> Graph {
        Graph::generate(GraphFamily::Path, n).unwrap()
    }

    fn lab(word: &str, n: usize) -> Labeling {
        Labeling::parse(word, n).unwrap()
    }

    #[test]
    fn toggle_swaps_nonadjacent_labels() {
        let g = path(5);
        let sigma = lab("45123", 5);
        assert_eq!(toggle(&g, &sigma, 3, 4).unwrap().word(), "35124");
        // Labels 1 and 2 sit on adjacent vertices, so nothing moves.
        assert_eq!(toggle(&g, &sigma, 1, 2).unwrap().word(), "45123");
        assert_eq!(toggle(&g, &sigma, 2, 2), Err(Error::ToggleLabelsEqual(2)));
        assert!(matches!(
            toggle(&g, &sigma, 0, 1),
            Err(Error::LabelOutOfRange { .. })
        ));
    }

    #[test]
    fn promotion_sweep() {
        let g = path(5);
        assert_eq!(promotion(&g, &lab("45123", 5)).word(), "34125");

        let single = Graph::from_edge_list(1, &[]).unwrap();
        assert_eq!(promotion(&single, &Labeling::identity(1)).word(), "1");

        let k4 = Graph::generate(GraphFamily::Complete, 4).unwrap();
        for sigma in crate::labeling::all_labelings(4) {
            assert_eq!(promotion(&k4, &sigma), sigma);
        }
    }

    #[test]
    fn toric_promotion_examples() {
        let g = path(5);
        assert_eq!(toric_promotion(&g, &lab("45123", 5)).unwrap().word(), "34521");

        let p3 = path(3);
        assert_eq!(toric_promotion(&p3, &lab("123", 3)).unwrap().word(), "321");
        assert_eq!(toric_promotion(&p3, &lab("321", 3)).unwrap().word(), "123");

        let single = Graph::from_edge_list(1, &[]).unwrap();
        assert_eq!(
            toric_promotion(&single, &Labeling::identity(1)),
            Err(Error::TooFewVertices { needed: 2, n: 1 })
        );
    }

    #[test]
    fn pi_ordering_of_toggles() {
        let g = path(5);
        let sigma = lab("45123", 5);
        let identity_pi: Vec<usize> = (1..=5).collect();
        assert_eq!(
            toric_promotion_pi(&g, &identity_pi, &sigma).unwrap(),
            toric_promotion(&g, &sigma).unwrap()
        );

        // For pi = 1,2,4,3 the toggles run (1,2), (2,3), (4,1), (3,4).
        let g4 = path(4);
        let sigma4 = lab("1234", 4);
        let mut expected = sigma4.clone();
        for (i, j) in [(1, 2), (2, 3), (4, 1), (3, 4)] {
            expected = toggle(&g4, &expected, i, j).unwrap();
        }
        assert_eq!(
            toric_promotion_pi(&g4, &[1, 2, 4, 3], &sigma4).unwrap(),
            expected
        );

        assert!(matches!(
            toric_promotion_pi(&g4, &[1, 1, 2, 3], &sigma4),
            Err(Error::DuplicateLabel(1))
        ));
    }

    #[test]
    fn zeta_permutations() {
        assert_eq!(zeta_permutation(5, 1).unwrap(), vec![1, 2, 3, 4, 5]);
        assert_eq!(zeta_permutation(6, 2).unwrap(), vec![1, 2, 3, 4, 6, 5]);
        assert_eq!(zeta_permutation(7, 3).unwrap(), vec![1, 2, 3, 4, 7, 6, 5]);
        assert!(matches!(
            zeta_permutation(5, 3),
            Err(Error::HOutOfRange { .. })
        ));
        assert!(matches!(
            zeta_permutation(5, 0),
            Err(Error::HOutOfRange { .. })
        ));
    }

    #[test]
    fn shift_examples() {
        let sigma = lab("45123", 5);
        assert_eq!(cyclic_shift(&sigma, 1).word(), "51234");
        assert_eq!(cyclic_shift(&sigma, 5), sigma);
        assert_eq!(cyclic_shift(&lab("213", 3), -1).word(), "132");
    }

    #[test]
    fn slides() {
        let g = path(3);
        let sigma = lab("123", 3);
        assert_eq!(jdt_slide(&g, &sigma, &[0, 1, 2]).unwrap().word(), "231");
        assert_eq!(jdt_slide(&g, &sigma, &[1]).unwrap(), sigma);

        let edge = path(2);
        assert_eq!(jdt_slide(&edge, &lab("12", 2), &[0, 1]).unwrap().word(), "21");

        assert_eq!(
            jdt_slide(&g, &sigma, &[0, 2]),
            Err(Error::PathStepNotEdge { u: 0, v: 2 })
        );
        assert_eq!(
            jdt_slide(&g, &sigma, &[0, 1, 0]),
            Err(Error::PathRepeatsVertex(0))
        );
        assert_eq!(jdt_slide(&g, &sigma, &[]), Err(Error::EmptyPath));
    }

    #[test]
    fn slide_path_construction() {
        let g = path(3);
        assert_eq!(cpro_path(&g, &lab("123", 3)), vec![0, 1, 2]);

        let k4 = Graph::generate(GraphFamily::Complete, 4).unwrap();
        let sigma = lab("3142", 4);
        let p = cpro_path(&k4, &sigma);
        let labels: Vec<usize> = p.iter().map(|&v| sigma.label(v)).collect();
        assert_eq!(labels, vec![1, 2, 3, 4]);

        // Label 1 isolated: the path stops immediately.
        let g2 = Graph::from_edge_list(3, &[(0, 1)]).unwrap();
        let sigma2 = lab("231", 3);
        assert_eq!(cpro_path(&g2, &sigma2), vec![2]);
    }

    #[test]
    fn slide_identity_on_samples() {
        for g in [path(5), Graph::generate(GraphFamily::Cycle, 5).unwrap()] {
            for sigma in crate::labeling::all_labelings(5) {
                let lhs = jdt_slide(&g, &sigma, &cpro_path(&g, &sigma)).unwrap();
                let rhs = cyclic_shift(&promotion(&g, &sigma), 1);
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn forest_paths_realize_powers() {
        let g = path(3);
        let sigma = lab("123", 3);
        assert_eq!(forest_power_path(&g, &sigma, 0).unwrap(), vec![0]);
        assert_eq!(
            forest_power_path(&g, &sigma, 1).unwrap(),
            cpro_path(&g, &sigma)
        );
        let p2 = forest_power_path(&g, &sigma, 2).unwrap();
        let mut twice = sigma.clone();
        for _ in 0..2 {
            twice = cyclic_shift(&promotion(&g, &twice), 1);
        }
        assert_eq!(jdt_slide(&g, &sigma, &p2).unwrap(), twice);

        let c3 = Graph::generate(GraphFamily::Cycle, 3).unwrap();
        assert_eq!(
            forest_power_path(&c3, &lab("123", 3), 1),
            Err(Error::NotAForest)
        );
    }

    #[test]
    fn factored_power_matches_iteration() {
        let g = path(5);
        let sigma = lab("45123", 5);
        assert_eq!(factored_tpro_power(&g, &sigma, 0, 0).unwrap(), sigma);

        let twice = toric_promotion(&g, &toric_promotion(&g, &sigma).unwrap()).unwrap();
        assert_eq!(factored_tpro_power(&g, &sigma, 0, 2).unwrap(), twice);

        let mut four = sigma.clone();
        for _ in 0..4 {
            four = toric_promotion(&g, &four).unwrap();
        }
        assert_eq!(factored_tpro_power(&g, &sigma, 1, 0).unwrap(), four);

        assert!(matches!(
            factored_tpro_power(&g, &sigma, 0, 4),
            Err(Error::KOutOfRange { .. })
        ));
    }

    #[test]
    fn compiled_operators_agree_with_direct_calls() {
        let g = path(4);
        for sigma in crate::labeling::all_labelings(4) {
            assert_eq!(
                OperatorSpec::Promotion.apply(&g, &sigma).unwrap(),
                promotion(&g, &sigma)
            );
            assert_eq!(
                OperatorSpec::ToricPromotion.apply(&g, &sigma).unwrap(),
                toric_promotion(&g, &sigma).unwrap()
            );
            assert_eq!(
                OperatorSpec::cpro().apply(&g, &sigma).unwrap(),
                cyclic_shift(&promotion(&g, &sigma), 1)
            );
            assert_eq!(OperatorSpec::identity().apply(&g, &sigma).unwrap(), sigma);
        }
        assert!(OperatorSpec::ToricPromotion.compile(1).is_err());
    }

    #[test]
    fn operator_rendering() {
        assert_eq!(OperatorSpec::Promotion.to_string(), "pro");
        assert_eq!(OperatorSpec::ToricPromotion.to_string(), "tpro");
        assert_eq!(OperatorSpec::cpro().to_string(), "cpro");
        assert_eq!(OperatorSpec::CyclicShift(2).to_string(), "c:2");
        assert_eq!(
            OperatorSpec::ToricPromotionPi(vec![1, 2, 4, 3]).to_string(),
            "tpro-pi:1,2,4,3"
        );
    }

    fn arb_tree_and_labeling() -> impl Strategy<Value = (Graph, Labeling)> {
        (2usize..7).prop_flat_map(|n| {
            let seq = proptest::collection::vec(0..n, n - 2);
            let rank = 0u64..crate::labeling::factorial(n);
            (seq, rank).prop_map(move |(seq, rank)| {
                (
                    Graph::from_prufer(&seq).unwrap(),
                    Labeling::from_rank(n, rank),
                )
            })
        })
    }

    proptest! {
        #[test]
        fn toggle_is_an_involution((g, sigma) in arb_tree_and_labeling(), i in 1usize..7, j in 1usize..7) {
            let n = g.n();
            let (i, j) = ((i - 1) % n + 1, (j - 1) % n + 1);
            prop_assume!(i != j);
            let once = toggle(&g, &sigma, i, j).unwrap();
            let twice = toggle(&g, &once, i, j).unwrap();
            prop_assert_eq!(twice, sigma);
        }

        #[test]
        fn shift_conjugates_toggle_indices((g, sigma) in arb_tree_and_labeling(), i in 1usize..7) {
            let n = g.n();
            let i = (i - 1) % n + 1;
            let next = i % n + 1;
            let (a, b) = tau_pair(i, n);
            let (c, d) = tau_pair(next, n);
            let lhs = cyclic_shift(&toggle(&g, &sigma, a, b).unwrap(), 1);
            let rhs = toggle(&g, &cyclic_shift(&sigma, 1), c, d).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
