"""CLI invocations with byte-stable golden outputs (shared by the golden test and its regenerator)."""

CASES = {
    "cf_expand_19_11": (["cf", "expand", "19", "11"], 0),
    "cf_eval_1_1": (["cf", "eval", "1", "1"], 0),
    "cf_dual_2_4_3": (["cf", "dual", "2", "4", "3"], 0),
    "presolutions_19_11": (["presolutions", "19", "11"], 0),
    "presolutions_2_1": (["presolutions", "2", "1"], 0),
    "presolutions_4_1": (["presolutions", "4", "1"], 0),
    "mmp_minimal": (["mmp", "{fx}/r19_11_minimal.json"], 0),
    "mmp_mark4": (["mmp", "{fx}/r19_11_mark4.json"], 0),
    "mmp_mark25_4": (["mmp", "{fx}/r19_11_mark25_4.json"], 0),
    "whs_classify_a": (["whs", "classify", "{fx}/star_6.json", "--matrix", "{fx}/star_6_case_a.matrix.json"], 0),
    "whs_classify_b": (["whs", "classify", "{fx}/star_6.json", "--matrix", "{fx}/star_6_case_b.matrix.json"], 0),
    "whs_construct_a": (["whs", "construct", "{fx}/star_6.json", "--matrix", "{fx}/star_6_case_a.matrix.json", "--format", "dot"], 0),
    "whs_construct_b": (["whs", "construct", "{fx}/star_6.json", "--matrix", "{fx}/star_6_case_b.matrix.json", "--format", "dot"], 0),
    "whs_verify_a": (["whs", "verify", "{fx}/star_6.json", "--matrix", "{fx}/star_6_case_a.matrix.json"], 0),
    "whs_verify_b": (["whs", "verify", "{fx}/star_6.json", "--matrix", "{fx}/star_6_case_b.matrix.json"], 0),
    "whs_t_plus_2": (["whs", "classify", "{fx}/star_t_plus_2.json", "--matrix", "{fx}/star_t_plus_2.corrected.matrix.json"], 3),
    "whs_surjectivity_all_twos": (["whs", "surjectivity", "{fx}/star_all_twos.json"], 0),
    "reproduce": (["reproduce"], 0),
}
