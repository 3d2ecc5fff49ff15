//! Multi-threaded drivers for enumeration and analysis.
//!
//! Work is split deterministically and merged in a fixed order, so the
//! result never depends on the thread count.

use std::thread;

use cyclo5::{
    apply_classifications, Analyzer, ClassCounts, Enumerator, Rational, Result, Snapshot, Window,
};

pub fn enumerate_parallel(radius_sq: Rational, window: Window, threads: usize) -> Result<Snapshot> {
    let en = Enumerator::new(radius_sq, window)?;
    let threads = threads.max(1);
    if threads == 1 {
        return en.run();
    }
    let slabs: Vec<i64> = en.outer_range().collect();
    let parts = thread::scope(|scope| {
        let handles: Vec<_> = (0..threads)
            .map(|t| {
                let en = &en;
                let slabs = &slabs;
                scope.spawn(move || {
                    let mut out = Vec::new();
                    for &a3 in slabs.iter().skip(t).step_by(threads) {
                        out.extend(en.slab(a3)?);
                    }
                    Ok(out)
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("enumeration worker panicked"))
            .collect::<Result<Vec<_>>>()
    })?;
    Ok(en.finish(parts.into_iter().flatten().collect()))
}

pub fn analyze_parallel(snapshot: &mut Snapshot, threads: usize) -> Result<ClassCounts> {
    let threads = threads.max(1);
    let n = snapshot.points.len();
    let results = {
        let analyzer = Analyzer::new(snapshot)?;
        let chunk = n.div_ceil(threads).max(1);
        thread::scope(|scope| {
            let handles: Vec<_> = (0..n)
                .step_by(chunk)
                .map(|start| {
                    let analyzer = &analyzer;
                    scope.spawn(move || {
                        (start..(start + chunk).min(n))
                            .map(|i| analyzer.classify(i))
                            .collect::<Result<Vec<_>>>()
                    })
                })
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("analysis worker panicked"))
                .collect::<Result<Vec<_>>>()
        })?
    };
    let flat: Vec<_> = results.into_iter().flatten().collect();
    Ok(apply_classifications(snapshot, &flat))
}

#[cfg(test)]
mod tests {
    use super::*;
    use cyclo5::{analyze, enumerate};

    #[test]
    fn thread_count_does_not_change_results() {
        let r2 = Rational::from_integer(49);
        let w = Window::unit();
        let mut serial = enumerate(r2, w).unwrap();
        let serial_counts = analyze(&mut serial).unwrap();
        for t in [1, 2, 3, 8] {
            let mut par = enumerate_parallel(r2, w, t).unwrap();
            assert_eq!(analyze_parallel(&mut par, t).unwrap(), serial_counts);
            assert_eq!(par, serial);
        }
    }

    #[test]
    fn empty_and_tiny() {
        let mut s = enumerate_parallel(Rational::from_integer(0), Window::unit(), 4).unwrap();
        assert_eq!(s.len(), 1);
        let c = analyze_parallel(&mut s, 4).unwrap();
        assert_eq!(c.unknown, 1);
    }
}
