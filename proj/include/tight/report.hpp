#pragma once

// Verdict and certificate types shared by the brute-force oracle and the
// decision pipelines. Verdicts are data, never exit codes or exceptions.

#include <optional>
#include <string>
#include <vector>

#include "tight/complex.hpp"
#include "tight/rational.hpp"

namespace tight {

enum class Verdict { Tight, NotTight, NotApplicable };

inline std::string verdict_str(Verdict v) {
    switch (v) {
        case Verdict::Tight: return "tight";
        case Verdict::NotTight: return "not_tight";
        default: return "not_applicable";
    }
}

enum class Reason {
    None,
    NotConnected,
    NotTwoNeighbourly,
    NotOrientable,
    LinkNotPrimitiveForm,
    Mu1NotIntegral,
    Mu1NeBeta1,
    NotManifold,
    WitnessFound,
    ObstructionFound,
    MethodMismatch,
};

inline std::string reason_str(Reason r) {
    switch (r) {
        case Reason::None: return "NONE";
        case Reason::NotConnected: return "NOT_CONNECTED";
        case Reason::NotTwoNeighbourly: return "NOT_2_NEIGHBOURLY";
        case Reason::NotOrientable: return "NOT_ORIENTABLE";
        case Reason::LinkNotPrimitiveForm: return "LINK_NOT_PRIMITIVE_FORM";
        case Reason::Mu1NotIntegral: return "MU1_NOT_INTEGRAL";
        case Reason::Mu1NeBeta1: return "MU1_NE_BETA1";
        case Reason::NotManifold: return "NOT_MANIFOLD";
        case Reason::WitnessFound: return "WITNESS_FOUND";
        case Reason::ObstructionFound: return "OBSTRUCTION_FOUND";
        default: return "METHOD_MISMATCH";
    }
}

// Witness of non-tightness: a vertex subset W, a degree k, and a k-cycle of
// C[W] that bounds in C but not in C[W]. Labels refer to the input complex.
struct TightnessWitness {
    std::vector<std::string> W;
    int k = 0;
    std::vector<std::vector<std::string>> cycle;  // faces of the kernel cycle
};

// Obstruction reported by the F2 tree-decomposition DP.
struct ObstructionInfo {
    int j = 0;           // homology degree
    int bag = -1;        // nice-decomposition bag index
    std::string kind;    // "introduce" or "join"
    std::string detail;  // chain patterns, for diagnostics
};

struct TightnessReport {
    Verdict verdict = Verdict::NotApplicable;
    std::string algorithm;  // brute | poly3 | fpt4 | fptd
    std::string field;      // Q | F2 | Fp | any
    Reason reason = Reason::None;
    std::optional<Rational> mu1;
    std::optional<long> beta1;
    std::optional<TightnessWitness> witness;
    std::optional<ObstructionInfo> obstruction;
    std::string note;  // free-form diagnostics (e.g. partial-verification caveat)
};

}  // namespace tight
