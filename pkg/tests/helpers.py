from icef.waveform import generate_qam_symbols, ofdm_modulate


def qpsk_symbol(config, seed):
    return ofdm_modulate(config, generate_qam_symbols("QPSK", config.active_subcarriers, seed))


SMALL_PLAN = {
    "config": {"nominal_transform_size": 256, "oversampling_factor": 4, "active_subcarriers": 120,
               "prb_size": 12},
    "modulation": "QPSK",
    "targets_db": [6, 8],
    "iteration_caps": [1, 5],
    "mask_family": "centered",
    "family_params": {"clean_prbs": [0, 4]},
    "symbols": 100,
    "seed": 11,
}
