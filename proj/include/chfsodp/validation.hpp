#ifndef CHFSODP_VALIDATION_HPP
#define CHFSODP_VALIDATION_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "chfsodp/classifiers.hpp"
#include "chfsodp/types.hpp"

namespace chfsodp {

// CHF is the positive class.
struct ConfusionCounts {
    long tp = 0;
    long fn = 0;
    long tn = 0;
    long fp = 0;

    long total() const { return tp + fn + tn + fp; }
    void add(Label truth, Label predicted);
};

// Ratios with a zero denominator are absent rather than zero.
struct Metrics {
    std::optional<double> sen;  // tp / (tp + fn)
    std::optional<double> sel;  // tp / (tp + fp), positive predictive value
    std::optional<double> spe;  // tn / (tn + fp)
    std::optional<double> acc;  // (tp + tn) / total
};

Metrics metrics_from_confusion(const ConfusionCounts& c);

// Stratified fold assignment: seeded shuffle within each class, then
// round-robin. Fold sizes differ by at most one, per-class proportions by
// at most one sample.
struct FoldAssignment {
    std::vector<int> fold;  // fold index per row
    int k = 0;
    std::uint64_t seed = 0;
};

FoldAssignment kfold_split(const std::vector<Label>& labels, int k,
                           std::uint64_t seed);

struct FoldOutcome {
    int fold_index = 0;
    ConfusionCounts confusion;
    Metrics metrics;
};

struct KfoldResult {
    ConfusionCounts pooled;
    Metrics metrics;
    std::vector<FoldOutcome> folds;
    int k = 0;
    std::uint64_t seed = 0;
};

// Fit standardization + classifier on k-1 folds, predict the held-out fold,
// pool one global confusion. Every row is predicted exactly once.
KfoldResult run_kfold(const Dataset& dataset, const ClassifierSpec& spec,
                      int k, std::uint64_t seed);

struct SubjectDecision {
    std::string subject_id;
    Label true_label = Label::Normal;
    long n_windows = 0;
    long n_classified_chf = 0;
    double rate = 0.0;       // n_classified_chf / n_windows
    bool positive = false;   // rate >= 0.50
    bool correct = false;
};

struct LosoResult {
    std::vector<SubjectDecision> decisions;
    double misclassification_rate = 0.0;
    // Number of held-out subjects whose training folds were verified free
    // of that subject's rows.
    long leakage_checks = 0;
};

// Leave-one-subject-out: hold out all windows of one subject per
// iteration; the subject is Positive when the fraction of its windows
// classified CHF reaches 0.50.
LosoResult run_loso(const Dataset& dataset, const ClassifierSpec& spec);

}  // namespace chfsodp

#endif
