//! Floating-point HiGHS solve used only to propose a starting basis.

use std::ffi::{c_void, CString};

use highs_sys::*;

use crate::error::{LpError, Result};
use crate::simplex::{StdForm, VarStatus};

const BASIS_BASIC: HighsInt = 1;
const BASIS_UPPER: HighsInt = 2;
const FORMAT_COLWISE: HighsInt = 1;

struct Handle(*mut c_void);

impl Drop for Handle {
    fn drop(&mut self) {
        unsafe { Highs_destroy(self.0) };
    }
}

fn opt(name: &str) -> CString {
    CString::new(name).unwrap()
}

/// Solves the program in floating point and returns the final basis, if any.
pub fn highs_basis(sf: &StdForm) -> Result<Option<Vec<VarStatus>>> {
    let (n, m) = (sf.n, sf.m);
    let mut start: Vec<HighsInt> = Vec::with_capacity(n + 1);
    let mut index: Vec<HighsInt> = Vec::new();
    let mut value: Vec<f64> = Vec::new();
    for col in &sf.cols {
        start.push(index.len() as HighsInt);
        for &(i, a) in col {
            index.push(i as HighsInt);
            value.push(a as f64);
        }
    }
    start.push(index.len() as HighsInt);
    let bound = |b: Option<i64>, inf: f64| b.map_or(inf, |v| v as f64);
    let cost: Vec<f64> = sf.cost[..n].iter().map(|&c| c as f64).collect();
    let col_lower: Vec<f64> = (0..n)
        .map(|j| bound(sf.lower[j], f64::NEG_INFINITY))
        .collect();
    let col_upper: Vec<f64> = (0..n).map(|j| bound(sf.upper[j], f64::INFINITY)).collect();
    // Row activity r = b − s, so slack bounds swap into row bounds.
    let row_lower: Vec<f64> = (0..m)
        .map(|i| bound(sf.upper[n + i].map(|u| sf.b[i] - u), f64::NEG_INFINITY))
        .collect();
    let row_upper: Vec<f64> = (0..m)
        .map(|i| bound(sf.lower[n + i].map(|l| sf.b[i] - l), f64::INFINITY))
        .collect();

    let h = Handle(unsafe { Highs_create() });
    unsafe {
        Highs_setBoolOptionValue(h.0, opt("output_flag").as_ptr(), 0);
        Highs_setIntOptionValue(h.0, opt("threads").as_ptr(), 1);
        Highs_setStringOptionValue(h.0, opt("solver").as_ptr(), opt("simplex").as_ptr());
        let status = Highs_passLp(
            h.0,
            n as HighsInt,
            m as HighsInt,
            index.len() as HighsInt,
            FORMAT_COLWISE,
            1,
            0.0,
            cost.as_ptr(),
            col_lower.as_ptr(),
            col_upper.as_ptr(),
            row_lower.as_ptr(),
            row_upper.as_ptr(),
            start.as_ptr(),
            index.as_ptr(),
            value.as_ptr(),
        );
        if status == STATUS_ERROR {
            return Err(LpError::Backend("model rejected".into()));
        }
        if Highs_run(h.0) == STATUS_ERROR {
            return Err(LpError::Backend("run failed".into()));
        }
        let model_status = Highs_getModelStatus(h.0);
        log::debug!("HiGHS model status {model_status}");
        let mut col_status = vec![0 as HighsInt; n];
        let mut row_status = vec![0 as HighsInt; m];
        if Highs_getBasis(h.0, col_status.as_mut_ptr(), row_status.as_mut_ptr()) != STATUS_OK {
            return Ok(None);
        }
        let mut out: Vec<VarStatus> = col_status
            .iter()
            .enumerate()
            .map(|(j, &s)| match s {
                BASIS_BASIC => VarStatus::Basic,
                BASIS_UPPER if sf.upper[j].is_some() => VarStatus::AtUpper,
                _ => sf.resting_status(j),
            })
            .collect();
        out.extend(row_status.iter().enumerate().map(|(i, &s)| {
            if s == BASIS_BASIC {
                VarStatus::Basic
            } else {
                sf.resting_status(n + i)
            }
        }));
        Ok(Some(out))
    }
}
