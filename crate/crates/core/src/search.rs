//! Budgeted depth-first backtracking over finite domains.
//!
//! A [`Problem`] exposes a fixed sequence of variables. Candidates for a
//! variable may depend on the values already chosen for earlier variables,
//! and `accept` is asked once per assignment of a variable to check every
//! constraint whose last variable it is.

use std::cell::Cell;
use std::ops::ControlFlow;

use crate::error::{Error, Result};

/// Default cap on visited search nodes.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Counts visited nodes and fails once a limit is crossed.
#[derive(Debug)]
pub struct Budget {
    limit: u64,
    used: Cell<u64>,
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget { limit, used: Cell::new(0) }
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn used(&self) -> u64 {
        self.used.get()
    }

    pub fn tick(&self, context: &str) -> Result<()> {
        self.charge(1, context)
    }

    pub fn charge(&self, n: u64, context: &str) -> Result<()> {
        let used = self.used.get().saturating_add(n);
        self.used.set(used);
        if used > self.limit {
            Err(Error::BudgetExceeded { limit: self.limit, context: context.to_string() })
        } else {
            Ok(())
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(DEFAULT_BUDGET)
    }
}

pub trait Problem {
    /// Number of variables.
    fn len(&self) -> usize;

    /// Candidate values for `var`, given values of variables `0..var`.
    fn candidates(&self, var: usize, assigned: &[usize]) -> Vec<usize>;

    /// Checks constraints closed by assigning `assigned[var]`.
    fn accept(&self, var: usize, assigned: &[usize]) -> bool;
}

/// Visits every complete consistent assignment in lexicographic candidate
/// order. Returns `Break` if the visitor stopped early.
pub fn solve<P, F>(problem: &P, budget: &Budget, context: &str, mut visit: F) -> Result<ControlFlow<()>>
where
    P: Problem + ?Sized,
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    let n = problem.len();
    let mut assigned: Vec<usize> = Vec::with_capacity(n);
    let mut stack: Vec<(Vec<usize>, usize)> = Vec::with_capacity(n);
    budget.tick(context)?;
    if n == 0 {
        return Ok(visit(&assigned));
    }
    stack.push((problem.candidates(0, &assigned), 0));
    while let Some((cands, pos)) = stack.last_mut() {
        let var = assigned.len();
        if *pos >= cands.len() {
            stack.pop();
            assigned.pop();
            continue;
        }
        let value = cands[*pos];
        *pos += 1;
        budget.tick(context)?;
        assigned.push(value);
        if !problem.accept(var, &assigned) {
            assigned.pop();
            continue;
        }
        if var + 1 == n {
            if visit(&assigned).is_break() {
                return Ok(ControlFlow::Break(()));
            }
            assigned.pop();
            continue;
        }
        let next = problem.candidates(var + 1, &assigned);
        stack.push((next, 0));
    }
    Ok(ControlFlow::Continue(()))
}

/// First complete assignment, if any.
pub fn first<P: Problem + ?Sized>(problem: &P, budget: &Budget, context: &str) -> Result<Option<Vec<usize>>> {
    let mut found = None;
    let _ = solve(problem, budget, context, |a| {
        found = Some(a.to_vec());
        ControlFlow::Break(())
    })?;
    Ok(found)
}

/// All complete assignments.
pub fn all<P: Problem + ?Sized>(problem: &P, budget: &Budget, context: &str) -> Result<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    let _ = solve(problem, budget, context, |a| {
        out.push(a.to_vec());
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Strictly increasing sequences of length k over 0..m.
    struct Increasing {
        k: usize,
        m: usize,
    }

    impl Problem for Increasing {
        fn len(&self) -> usize {
            self.k
        }
        fn candidates(&self, _var: usize, _assigned: &[usize]) -> Vec<usize> {
            (0..self.m).collect()
        }
        fn accept(&self, var: usize, a: &[usize]) -> bool {
            var == 0 || a[var - 1] < a[var]
        }
    }

    #[test]
    fn counts_combinations() {
        let p = Increasing { k: 3, m: 6 };
        let sols = all(&p, &Budget::default(), "t").unwrap();
        assert_eq!(sols.len(), 20);
        assert_eq!(sols[0], vec![0, 1, 2]);
        assert_eq!(sols.last().unwrap(), &vec![3, 4, 5]);
    }

    #[test]
    fn empty_problem_has_one_solution() {
        let p = Increasing { k: 0, m: 3 };
        assert_eq!(all(&p, &Budget::default(), "t").unwrap(), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn budget_is_enforced() {
        let p = Increasing { k: 4, m: 30 };
        let err = all(&p, &Budget::new(50), "t").unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { limit: 50, .. }));
    }

    #[test]
    fn first_stops_early() {
        let p = Increasing { k: 2, m: 1000 };
        let b = Budget::default();
        assert_eq!(first(&p, &b, "t").unwrap(), Some(vec![0, 1]));
        assert!(b.used() < 10);
    }
}
