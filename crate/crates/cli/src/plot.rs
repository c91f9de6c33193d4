//! Generated gnuplot script drawing the left-hand side (gray) and the
//! right-hand side (black) of the inequality against the family parameter.

use qudit_steering::SteeringFunctional;

use crate::FamilyArg;

pub fn gnuplot_script(family: FamilyArg, csv_path: &str, functionals: &[SteeringFunctional]) -> String {
    let (xlabel, title, stem) = match family {
        FamilyArg::Werner => ("p", "Werner state", "werner"),
        FamilyArg::Gisin => ("x", "Gisin state", "gisin"),
    };
    let mut s = String::new();
    s.push_str("# generated by qudit-steer sweep\n");
    s.push_str("set datafile separator ','\n");
    s.push_str("set key autotitle columnhead top left\n");
    s.push_str("set terminal pngcairo size 800,600\n");
    s.push_str(&format!("set output '{stem}_steering.png'\n"));
    s.push_str(&format!("set title '{title}: max E(m,n) vs right-hand side'\n"));
    s.push_str(&format!("set xlabel '{xlabel}'\n"));
    s.push_str("set grid\n");

    let mut curves = Vec::new();
    if functionals.len() == 1 {
        curves.push(format!("'{csv_path}' using 1:2 with lines lw 2 lc rgb '#999999' title 'lhs'"));
        curves.push("'' using 1:3 with lines lw 2 lc rgb '#000000' title 'rhs'".to_string());
    } else {
        for (k, f) in functionals.iter().enumerate() {
            let lhs_col = 2 + 3 * k;
            let dash = if k == 0 { "" } else { " dt 2" };
            curves.push(format!(
                "'{csv_path}' using 1:{lhs_col} with lines lw 2 lc rgb '#999999'{dash} title 'lhs ({})'",
                f.name()
            ));
            curves.push(format!(
                "'' using 1:{} with lines lw 2 lc rgb '#000000'{dash} title 'rhs ({})'",
                lhs_col + 1,
                f.name()
            ));
        }
    }
    s.push_str("plot ");
    s.push_str(&curves.join(", \\\n     "));
    s.push('\n');
    s
}
