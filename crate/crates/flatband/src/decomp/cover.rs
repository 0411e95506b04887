//! Exact cover via Algorithm X on dancing links.
//!
//! Items are indexed `0..n_items`; options are added as sorted item lists and
//! identified by insertion order. Column choice is by fewest remaining
//! options with ties broken by lowest item id, and options within a column
//! are explored in insertion order, so counting and enumeration are fully
//! deterministic. Counting never materializes solutions.

use std::ops::ControlFlow;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

const NIL: u32 = u32::MAX;

/// Node/time caps for a search. `None` means unlimited.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SearchBudget {
    pub max_nodes: Option<u64>,
    pub max_seconds: Option<f64>,
}

impl SearchBudget {
    pub const UNLIMITED: SearchBudget = SearchBudget {
        max_nodes: None,
        max_seconds: None,
    };
}

/// Outcome of a counting search. `completed == true` means the count is exact.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CountOutcome {
    pub count: u128,
    pub nodes: u64,
    pub seconds: f64,
    pub completed: bool,
}

#[derive(Clone, Copy)]
struct Node {
    left: u32,
    right: u32,
    up: u32,
    down: u32,
    /// Column header index for body nodes; option id for spacer-free lookup.
    column: u32,
    option: u32,
}

/// Dancing-links matrix. Headers occupy indices `0..=n_items` (0 is the root).
pub struct ExactCover {
    nodes: Vec<Node>,
    counts: Vec<u32>,
    n_items: usize,
    n_options: usize,
}

impl ExactCover {
    pub fn new(n_items: usize) -> Self {
        let mut nodes = Vec::with_capacity(n_items + 1);
        for i in 0..=n_items as u32 {
            let left = if i == 0 { n_items as u32 } else { i - 1 };
            let right = if i == n_items as u32 { 0 } else { i + 1 };
            nodes.push(Node {
                left,
                right,
                up: i,
                down: i,
                column: i,
                option: NIL,
            });
        }
        ExactCover {
            nodes,
            counts: vec![0; n_items + 1],
            n_items,
            n_options: 0,
        }
    }

    /// Append an option covering the given items (strictly ascending, 0-based).
    pub fn add_option(&mut self, items: &[usize]) -> usize {
        assert!(!items.is_empty(), "empty option");
        assert!(
            items.windows(2).all(|w| w[0] < w[1]),
            "items must be strictly ascending"
        );
        assert!(*items.last().unwrap() < self.n_items, "item out of range");
        let option = self.n_options as u32;
        let start = self.nodes.len() as u32;
        for (k, &item) in items.iter().enumerate() {
            let header = (item + 1) as u32;
            let idx = start + k as u32;
            let up = self.nodes[header as usize].up;
            self.nodes.push(Node {
                left: if k == 0 {
                    start + items.len() as u32 - 1
                } else {
                    idx - 1
                },
                right: if k + 1 == items.len() { start } else { idx + 1 },
                up,
                down: header,
                column: header,
                option,
            });
            self.nodes[up as usize].down = idx;
            self.nodes[header as usize].up = idx;
            self.counts[header as usize] += 1;
        }
        self.n_options += 1;
        self.n_options - 1
    }

    pub fn n_options(&self) -> usize {
        self.n_options
    }

    fn cover(&mut self, header: u32) {
        let (l, r) = (self.nodes[header as usize].left, self.nodes[header as usize].right);
        self.nodes[l as usize].right = r;
        self.nodes[r as usize].left = l;
        let mut i = self.nodes[header as usize].down;
        while i != header {
            let mut j = self.nodes[i as usize].right;
            while j != i {
                let (u, d) = (self.nodes[j as usize].up, self.nodes[j as usize].down);
                self.nodes[u as usize].down = d;
                self.nodes[d as usize].up = u;
                self.counts[self.nodes[j as usize].column as usize] -= 1;
                j = self.nodes[j as usize].right;
            }
            i = self.nodes[i as usize].down;
        }
    }

    fn uncover(&mut self, header: u32) {
        let mut i = self.nodes[header as usize].up;
        while i != header {
            let mut j = self.nodes[i as usize].left;
            while j != i {
                let (u, d) = (self.nodes[j as usize].up, self.nodes[j as usize].down);
                self.nodes[u as usize].down = j;
                self.nodes[d as usize].up = j;
                self.counts[self.nodes[j as usize].column as usize] += 1;
                j = self.nodes[j as usize].left;
            }
            i = self.nodes[i as usize].up;
        }
        let (l, r) = (self.nodes[header as usize].left, self.nodes[header as usize].right);
        self.nodes[l as usize].right = header;
        self.nodes[r as usize].left = header;
    }

    /// Fewest-options column; ties resolved by lowest item id because the
    /// header ring preserves id order.
    fn choose_column(&self) -> Option<u32> {
        let mut best = NIL;
        let mut best_count = u32::MAX;
        let mut h = self.nodes[0].right;
        while h != 0 {
            let c = self.counts[h as usize];
            if c < best_count {
                best_count = c;
                best = h;
                if c == 0 {
                    break;
                }
            }
            h = self.nodes[h as usize].right;
        }
        if best == NIL {
            None
        } else {
            Some(best)
        }
    }

    /// Count exact covers without materializing them.
    pub fn count(&mut self, budget: &SearchBudget) -> CountOutcome {
        let start = Instant::now();
        let deadline = budget
            .max_seconds
            .map(|s| start + Duration::from_secs_f64(s));
        let mut state = CountState {
            count: 0,
            nodes: 0,
            exhausted: false,
            max_nodes: budget.max_nodes,
            deadline,
        };
        self.count_rec(&mut state);
        CountOutcome {
            count: state.count,
            nodes: state.nodes,
            seconds: start.elapsed().as_secs_f64(),
            completed: !state.exhausted,
        }
    }

    fn count_rec(&mut self, state: &mut CountState) {
        let Some(column) = self.choose_column() else {
            state.count += 1;
            return;
        };
        if self.counts[column as usize] == 0 {
            return;
        }
        self.cover(column);
        let mut row = self.nodes[column as usize].down;
        while row != column {
            state.nodes += 1;
            if state.over_budget() {
                break;
            }
            let mut j = self.nodes[row as usize].right;
            while j != row {
                self.cover(self.nodes[j as usize].column);
                j = self.nodes[j as usize].right;
            }
            self.count_rec(state);
            let mut j = self.nodes[row as usize].left;
            while j != row {
                self.uncover(self.nodes[j as usize].column);
                j = self.nodes[j as usize].left;
            }
            if state.exhausted {
                break;
            }
            row = self.nodes[row as usize].down;
        }
        self.uncover(column);
    }

    /// Enumerate exact covers in deterministic order, invoking `emit` with the
    /// option ids of each solution. Return `Break` from the callback to stop.
    pub fn enumerate(&mut self, emit: &mut dyn FnMut(&[usize]) -> ControlFlow<()>) {
        let mut partial = Vec::new();
        let _ = self.enumerate_rec(&mut partial, emit);
    }

    fn enumerate_rec(
        &mut self,
        partial: &mut Vec<usize>,
        emit: &mut dyn FnMut(&[usize]) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        let Some(column) = self.choose_column() else {
            return emit(partial);
        };
        if self.counts[column as usize] == 0 {
            return ControlFlow::Continue(());
        }
        self.cover(column);
        let mut flow = ControlFlow::Continue(());
        let mut row = self.nodes[column as usize].down;
        while row != column {
            partial.push(self.nodes[row as usize].option as usize);
            let mut j = self.nodes[row as usize].right;
            while j != row {
                self.cover(self.nodes[j as usize].column);
                j = self.nodes[j as usize].right;
            }
            flow = self.enumerate_rec(partial, emit);
            let mut j = self.nodes[row as usize].left;
            while j != row {
                self.uncover(self.nodes[j as usize].column);
                j = self.nodes[j as usize].left;
            }
            partial.pop();
            if flow.is_break() {
                break;
            }
            row = self.nodes[row as usize].down;
        }
        self.uncover(column);
        flow
    }
}

struct CountState {
    count: u128,
    nodes: u64,
    exhausted: bool,
    max_nodes: Option<u64>,
    deadline: Option<Instant>,
}

impl CountState {
    fn over_budget(&mut self) -> bool {
        if self.exhausted {
            return true;
        }
        if let Some(max) = self.max_nodes {
            if self.nodes > max {
                self.exhausted = true;
                return true;
            }
        }
        if let Some(deadline) = self.deadline {
            if self.nodes % 1024 == 0 && Instant::now() > deadline {
                self.exhausted = true;
                return true;
            }
        }
        false
    }
}
