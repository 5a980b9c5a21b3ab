// temporary diagnostic
use inls_core::exponents::ModelParams;
use inls_core::grid::RadialGrid;
use inls_core::groundstate::debug_probe;

#[test]
fn scan_fates() {
    let params = ModelParams::new(3.0, 0.0, 3.0).unwrap();
    let grid = RadialGrid::new(2048, 20.0, 3.0).unwrap();
    for amp in [0.5, 1.0, 1.5, 2.0, 2.1, 2.2, 2.21, 2.3, 2.5, 3.0, 4.0, 4.3, 4.4] {
        let crossed = debug_probe(&params, &grid, amp);
        println!("amp {amp}: crossed = {crossed}");
    }
}
