use std::collections::{BTreeMap, BTreeSet, HashSet};

use super::CfkComplex;

fn dual_name(name: &str) -> String {
    match name.strip_suffix('*') {
        Some(base) => base.to_string(),
        None => format!("{name}*"),
    }
}

/// The mirror's complex: gradings negated, arrows reversed with the same
/// power. Names gain or lose a trailing `*`, so `dual(dual(c)) == c`.
pub fn dual(c: &CfkComplex) -> CfkComplex {
    let mut out = CfkComplex::new();
    for g in c.generators() {
        out.add_generator(dual_name(&g.name), -g.alexander, -g.maslov)
            .expect("dual names are unique when the originals are");
    }
    for a in c.arrows() {
        out.toggle_arrow(a.target, a.source, a.u_exp);
    }
    out
}

fn pair_names(left: &CfkComplex, right: &CfkComplex) -> Vec<String> {
    let build = |f: &dyn Fn(&str, &str) -> String| -> Vec<String> {
        left.generators()
            .iter()
            .flat_map(|l| right.generators().iter().map(move |r| f(&l.name, &r.name)))
            .collect()
    };
    let all_distinct = |names: &[String]| names.iter().collect::<HashSet<_>>().len() == names.len();
    let dotted = build(&|l, r| format!("{l}.{r}"));
    if all_distinct(&dotted) {
        return dotted;
    }
    let tupled = build(&|l, r| format!("({l},{r})"));
    if all_distinct(&tupled) {
        return tupled;
    }
    (0..dotted.len()).map(|n| format!("g{n}")).collect()
}

/// Tensor product over F2[U, U^-1]: generator pairs with added gradings and
/// the Leibniz differential.
pub fn tensor(left: &CfkComplex, right: &CfkComplex) -> CfkComplex {
    let names = pair_names(left, right);
    let width = right.len();
    let mut out = CfkComplex::new();
    let mut names = names.into_iter();
    for l in left.generators() {
        for r in right.generators() {
            out.add_generator(
                names.next().expect("one name per pair"),
                l.alexander + r.alexander,
                l.maslov + r.maslov,
            )
            .expect("pair names are distinct");
        }
    }
    for a in left.arrows() {
        for r in 0..width {
            out.toggle_arrow(a.source * width + r, a.target * width + r, a.u_exp);
        }
    }
    for a in right.arrows() {
        for l in 0..left.len() {
            out.toggle_arrow(l * width + a.source, l * width + a.target, a.u_exp);
        }
    }
    out
}

/// Working copy for cancellation with two-sided adjacency.
struct Cancellation {
    alexander: Vec<i64>,
    out: Vec<BTreeMap<usize, BTreeSet<i64>>>,
    inc: Vec<BTreeMap<usize, BTreeSet<i64>>>,
    alive: Vec<bool>,
    pending: BTreeSet<(usize, usize)>,
}

impl Cancellation {
    fn new(c: &CfkComplex) -> Self {
        let n = c.len();
        let mut w = Self {
            alexander: c.generators().iter().map(|g| g.alexander).collect(),
            out: vec![BTreeMap::new(); n],
            inc: vec![BTreeMap::new(); n],
            alive: vec![true; n],
            pending: BTreeSet::new(),
        };
        for a in c.arrows() {
            w.toggle(a.source, a.target, a.u_exp);
        }
        w
    }

    fn cancellable(&self, x: usize, y: usize, n: i64) -> bool {
        n == 0 && self.alexander[x] == self.alexander[y]
    }

    fn toggle(&mut self, x: usize, y: usize, n: i64) {
        let powers = self.out[x].entry(y).or_default();
        let present = !powers.insert(n);
        if present {
            powers.remove(&n);
            if powers.is_empty() {
                self.out[x].remove(&y);
            }
            let back = self.inc[y].get_mut(&x).expect("adjacency is symmetric");
            back.remove(&n);
            if back.is_empty() {
                self.inc[y].remove(&x);
            }
        } else {
            self.inc[y].entry(x).or_default().insert(n);
            if self.cancellable(x, y, n) {
                self.pending.insert((x, y));
            }
        }
    }

    fn has_arrow(&self, x: usize, y: usize, n: i64) -> bool {
        self.out[x].get(&y).is_some_and(|p| p.contains(&n))
    }

    /// Cancels `x -> y` (power 0): every `w -> y` composes with every
    /// `x -> z` into a toggled `w -> z`, then `x` and `y` are removed.
    fn cancel(&mut self, x: usize, y: usize) {
        let into_y: Vec<(usize, i64)> = self.inc[y]
            .iter()
            .filter(|(&w, _)| w != x)
            .flat_map(|(&w, ps)| ps.iter().map(move |&n| (w, n)))
            .collect();
        let from_x: Vec<(usize, i64)> = self.out[x]
            .iter()
            .filter(|(&z, _)| z != y)
            .flat_map(|(&z, ps)| ps.iter().map(move |&n| (z, n)))
            .collect();
        for &(w, n1) in &into_y {
            for &(z, n2) in &from_x {
                self.toggle(w, z, n1 + n2);
            }
        }
        for v in [x, y] {
            for (t, ps) in std::mem::take(&mut self.out[v]) {
                for n in ps {
                    if let Some(back) = self.inc[t].get_mut(&v) {
                        back.remove(&n);
                        if back.is_empty() {
                            self.inc[t].remove(&v);
                        }
                    }
                }
            }
            for (s, ps) in std::mem::take(&mut self.inc[v]) {
                for n in ps {
                    if let Some(fwd) = self.out[s].get_mut(&v) {
                        fwd.remove(&n);
                        if fwd.is_empty() {
                            self.out[s].remove(&v);
                        }
                    }
                }
            }
            self.alive[v] = false;
        }
    }

    /// `d^2 = 0` on the surviving generators.
    fn squares_to_zero(&self) -> bool {
        for x in 0..self.out.len() {
            let mut parity: BTreeMap<(usize, i64), bool> = BTreeMap::new();
            for (&y, p1) in &self.out[x] {
                for &n1 in p1 {
                    for (&z, p2) in &self.out[y] {
                        for &n2 in p2 {
                            let e = parity.entry((z, n1 + n2)).or_insert(false);
                            *e = !*e;
                        }
                    }
                }
            }
            if parity.values().any(|&odd| odd) {
                return false;
            }
        }
        true
    }

    fn run(&mut self) {
        let check = cfg!(debug_assertions) && self.alive.len() <= 64;
        while let Some((x, y)) = self.pending.pop_first() {
            if !(self.alive[x] && self.alive[y] && self.has_arrow(x, y, 0)) {
                continue;
            }
            self.cancel(x, y);
            if check {
                debug_assert!(self.squares_to_zero(), "cancellation broke d^2 = 0");
            }
        }
    }
}

/// Cancels every arrow that preserves both filtrations, in the order of the
/// canonical generator sort. The result has no arrow with `u = 0` and equal
/// Alexander gradings at both ends.
pub fn reduce(c: &CfkComplex) -> CfkComplex {
    let c = c.canonical();
    let mut w = Cancellation::new(&c);
    w.run();
    let mut out = CfkComplex::new();
    let mut new_index = vec![usize::MAX; c.len()];
    for (i, g) in c.generators().iter().enumerate() {
        if w.alive[i] {
            new_index[i] = out
                .add_generator(g.name.clone(), g.alexander, g.maslov)
                .expect("names already unique");
        }
    }
    for (x, targets) in w.out.iter().enumerate() {
        for (&y, powers) in targets {
            for &n in powers {
                out.toggle_arrow(new_index[x], new_index[y], n);
            }
        }
    }
    out
}
