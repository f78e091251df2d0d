#pragma once

#include "crackforge/mask.hpp"
#include "crackforge/morphometry.hpp"
#include "crackforge/orientation.hpp"
#include "crackforge/propagation.hpp"

namespace crackforge {

/// Weights of the thickness, saturation and continuity terms.
struct MorphologyWeights
{
    double thickness = 2.0;
    double saturation = 2.0;
    double continuity = 4.0;
};

struct ThickenResult
{
    BinaryMask mask;
    double alpha = 1.0;
    double achieved_thickness = 0.0;
    int iterations = 0;
    bool converged = false;
};

inline constexpr double kAlphaMin = 0.25;
inline constexpr double kAlphaMax = 8.0;

/// Stamps a Euclidean disk of radius alpha * max(T(q), 1) on every skeleton
/// pixel p, where q is the source-crack pixel nearest to p and T is
/// `base_thickness`. Elongated tips inherit the thickness of the crack end they
/// grew from; thick regions stay thick.
BinaryMask dilate_by_profile(const BinaryMask& skeleton, const HalfThicknessMap& base_thickness, double alpha);

/// Bisects alpha in [kAlphaMin, kAlphaMax] until the mean half-thickness of the
/// dilated skeleton is within tol_rel of target_mu_t. On failure returns the
/// best alpha seen with converged = false.
ThickenResult thicken(const BinaryMask& skeleton, const HalfThicknessMap& base_thickness, double target_mu_t,
                      double tol_rel, int max_iters);

struct TranslationRequest
{
    BinaryMask source;
    StageStats target;
    PropagationParams prop;
    LeeParams lee;
    double tol_rel = 0.10;
    int max_iters = 24;
    bool branching = false;
    MorphologyWeights weights;
};

struct TranslationResult
{
    BinaryMask mask;
    BinaryMask skeleton; // elongated (and branched) skeleton the mask was grown from
    double achieved_saturation = 0.0;
    double achieved_thickness = 0.0;
    int iterations = 0;
    bool converged = false;
    double morphology_score = 0.0;
    double alpha = 1.0;
    double skeleton_budget = 0.0;
};

double morphology_score(const BinaryMask& mask, const StageStats& target, const MorphologyWeights& weights);

/// Elongates the source skeleton, then thickens it, adjusting the elongation
/// budget until saturation and mean thickness both sit within tol_rel of the
/// target (or max_iters is exhausted).
TranslationResult translate_stage(const TranslationRequest& request);

} // namespace crackforge
