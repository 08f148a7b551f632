from .scan import ScanConfig, ScanResult, CellRecord, run_scan, sample_initial_conditions
from .fitting import fit_confinement, fit_power_law
from .outputs import emit_outputs, read_scan_csv, write_scan_csv
