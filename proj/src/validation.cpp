#include "chfsodp/validation.hpp"

#include <algorithm>
#include <unordered_map>

#include "chfsodp/errors.hpp"
#include "chfsodp/rng.hpp"

namespace chfsodp {

void ConfusionCounts::add(Label truth, Label predicted) {
    if (truth == Label::Chf) {
        (predicted == Label::Chf ? tp : fn)++;
    } else {
        (predicted == Label::Normal ? tn : fp)++;
    }
}

Metrics metrics_from_confusion(const ConfusionCounts& c) {
    if (c.total() == 0) throw EmptyConfusion();
    Metrics m;
    if (c.tp + c.fn > 0) {
        m.sen = static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn);
    }
    if (c.tp + c.fp > 0) {
        m.sel = static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fp);
    }
    if (c.tn + c.fp > 0) {
        m.spe = static_cast<double>(c.tn) / static_cast<double>(c.tn + c.fp);
    }
    m.acc = static_cast<double>(c.tp + c.tn) / static_cast<double>(c.total());
    return m;
}

FoldAssignment kfold_split(const std::vector<Label>& labels, int k,
                           std::uint64_t seed) {
    const std::size_t n = labels.size();
    if (k < 2) throw BadK("k must be >= 2, got " + std::to_string(k));
    if (static_cast<std::size_t>(k) > n) {
        throw BadK("k exceeds sample count");
    }
    std::size_t n_chf = 0;
    for (Label l : labels) n_chf += l == Label::Chf ? 1 : 0;
    if (n_chf < static_cast<std::size_t>(k) ||
        n - n_chf < static_cast<std::size_t>(k)) {
        throw BadK("each class needs at least k samples for stratification");
    }

    std::vector<std::size_t> chf_rows, normal_rows;
    for (std::size_t i = 0; i < n; ++i) {
        (labels[i] == Label::Chf ? chf_rows : normal_rows).push_back(i);
    }
    Rng rng(seed);
    rng.shuffle(chf_rows);
    rng.shuffle(normal_rows);

    FoldAssignment assignment;
    assignment.fold.assign(n, -1);
    assignment.k = k;
    assignment.seed = seed;

    // One running cursor across classes keeps total fold sizes within one
    // of each other while each class stays round-robin balanced.
    std::size_t cursor = 0;
    for (const auto* rows : {&chf_rows, &normal_rows}) {
        for (std::size_t row : *rows) {
            assignment.fold[row] = static_cast<int>(cursor % static_cast<std::size_t>(k));
            ++cursor;
        }
    }
    return assignment;
}

namespace {

Dataset select_rows(const Dataset& data, const std::vector<std::size_t>& rows) {
    Dataset out;
    out.features.reserve(rows.size());
    out.labels.reserve(rows.size());
    out.subject_ids.reserve(rows.size());
    for (std::size_t i : rows) {
        out.features.push_back(data.features[i]);
        out.labels.push_back(data.labels[i]);
        out.subject_ids.push_back(data.subject_ids[i]);
    }
    return out;
}

}  // namespace

KfoldResult run_kfold(const Dataset& dataset, const ClassifierSpec& spec,
                      int k, std::uint64_t seed) {
    const FoldAssignment assignment = kfold_split(dataset.labels, k, seed);

    KfoldResult result;
    result.k = k;
    result.seed = seed;

    std::size_t predictions = 0;
    for (int f = 0; f < k; ++f) {
        std::vector<std::size_t> train_rows, test_rows;
        for (std::size_t i = 0; i < dataset.size(); ++i) {
            (assignment.fold[i] == f ? test_rows : train_rows).push_back(i);
        }
        ClassifierSpec fold_spec = spec;
        fold_spec.seed = derive_seed(spec.seed, static_cast<std::uint64_t>(f));
        const TrainedClassifier trained =
            train_classifier(select_rows(dataset, train_rows), fold_spec);

        FoldOutcome outcome;
        outcome.fold_index = f;
        for (std::size_t i : test_rows) {
            const auto [predicted, score] = classify(trained, dataset.features[i]);
            (void)score;
            outcome.confusion.add(dataset.labels[i], predicted);
            result.pooled.add(dataset.labels[i], predicted);
            ++predictions;
        }
        outcome.metrics = metrics_from_confusion(outcome.confusion);
        result.folds.push_back(std::move(outcome));
    }

    if (predictions != dataset.size()) {
        throw Error("internal: k-fold predicted " + std::to_string(predictions) +
                    " of " + std::to_string(dataset.size()) + " rows");
    }
    result.metrics = metrics_from_confusion(result.pooled);
    return result;
}

LosoResult run_loso(const Dataset& dataset, const ClassifierSpec& spec) {
    // Subjects in first-appearance order, so manifest order is preserved.
    std::vector<std::string> subjects;
    std::unordered_map<std::string, std::vector<std::size_t>> rows_of;
    for (std::size_t i = 0; i < dataset.size(); ++i) {
        auto [it, inserted] = rows_of.try_emplace(dataset.subject_ids[i]);
        if (inserted) subjects.push_back(dataset.subject_ids[i]);
        it->second.push_back(i);
    }

    LosoResult result;
    long wrong = 0;
    for (std::size_t s = 0; s < subjects.size(); ++s) {
        const std::string& held_out = subjects[s];
        std::vector<std::size_t> train_rows;
        bool train_has_chf = false, train_has_normal = false;
        for (std::size_t i = 0; i < dataset.size(); ++i) {
            if (dataset.subject_ids[i] == held_out) continue;
            train_rows.push_back(i);
            (dataset.labels[i] == Label::Chf ? train_has_chf
                                             : train_has_normal) = true;
        }
        if (!train_has_chf || !train_has_normal) {
            throw SingleClassTraining(held_out);
        }

        const Dataset train = select_rows(dataset, train_rows);
        for (const auto& id : train.subject_ids) {
            if (id == held_out) {
                throw Error("internal: held-out subject leaked into training");
            }
        }
        ++result.leakage_checks;

        ClassifierSpec fold_spec = spec;
        fold_spec.seed = derive_seed(spec.seed, 0x10000ULL + s);
        const TrainedClassifier trained = train_classifier(train, fold_spec);

        SubjectDecision decision;
        decision.subject_id = held_out;
        const auto& test_rows = rows_of[held_out];
        decision.true_label = dataset.labels[test_rows.front()];
        decision.n_windows = static_cast<long>(test_rows.size());
        for (std::size_t i : test_rows) {
            const auto [predicted, score] = classify(trained, dataset.features[i]);
            (void)score;
            if (predicted == Label::Chf) ++decision.n_classified_chf;
        }
        decision.rate = static_cast<double>(decision.n_classified_chf) /
                        static_cast<double>(decision.n_windows);
        decision.positive = decision.rate >= 0.50;
        decision.correct =
            decision.positive == (decision.true_label == Label::Chf);
        if (!decision.correct) ++wrong;
        result.decisions.push_back(std::move(decision));
    }

    result.misclassification_rate =
        result.decisions.empty()
            ? 0.0
            : static_cast<double>(wrong) /
                  static_cast<double>(result.decisions.size());
    return result;
}

}  // namespace chfsodp
