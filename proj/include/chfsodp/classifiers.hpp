#ifndef CHFSODP_CLASSIFIERS_HPP
#define CHFSODP_CLASSIFIERS_HPP

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "chfsodp/types.hpp"

namespace chfsodp {

// Rows = windows; columns = features. subject_ids runs parallel to labels.
struct Dataset {
    std::vector<std::vector<double>> features;
    std::vector<Label> labels;
    std::vector<std::string> subject_ids;

    std::size_t size() const { return features.size(); }
    std::size_t dim() const { return features.empty() ? 0 : features[0].size(); }
};

Dataset dataset_from_rows(const std::vector<FeatureRow>& rows);

// Per-feature mean and population standard deviation, fit on training data
// only. A zero deviation is replaced by 1 so constant columns standardize
// to zero.
struct StandardizationParams {
    std::vector<double> mean;
    std::vector<double> stddev;
};

StandardizationParams standardize_fit(const Dataset& train);
std::vector<double> standardize_apply(const StandardizationParams& params,
                                      std::span<const double> x);
Dataset standardize_apply(const StandardizationParams& params, const Dataset& data);

// ---- Fisher linear discriminant ----

// Decision score s(x) = weight . x + bias; s > 0 means CHF.
struct LdaModel {
    std::vector<double> weight;
    double bias = 0.0;
};

LdaModel lda_train(const Dataset& train);
std::pair<Label, double> lda_predict(const LdaModel& model,
                                     std::span<const double> x);

// ---- Gaussian naive Bayes ----

struct NbModel {
    double prior_chf = 0.5;
    double prior_normal = 0.5;
    std::vector<double> mean_chf, var_chf;
    std::vector<double> mean_normal, var_normal;
};

NbModel nb_train(const Dataset& train);
// Returns (label, posterior probability of CHF); CHF iff posterior >= 0.5.
std::pair<Label, double> nb_predict(const NbModel& model,
                                    std::span<const double> x);

// ---- single-hidden-layer perceptron ----

// Logistic activations throughout; output o >= 0.5 means CHF.
struct MlpModel {
    int input_dim = 0;
    int hidden = 0;
    std::vector<double> w1;  // hidden x input, row-major
    std::vector<double> b1;  // hidden
    std::vector<double> w2;  // hidden
    double b2 = 0.0;

    std::size_t parameter_count() const;
};

MlpModel mlp_init(int input_dim, int hidden, std::uint64_t seed);

// Mean cross-entropy over the dataset; gradient has the model's shape.
double mlp_loss_and_gradient(const MlpModel& model, const Dataset& data,
                             MlpModel* gradient);

// Full-batch gradient descent. Deterministic for fixed (seed, data,
// hyperparameters); epochs = 0 returns the initialization untouched.
MlpModel mlp_train(const Dataset& train, int hidden, double learning_rate,
                   int epochs, std::uint64_t seed);

std::pair<Label, double> mlp_predict(const MlpModel& model,
                                     std::span<const double> x);

// ---- unified front end used by the validation protocols ----

enum class ClassifierKind { Lda, Nb, Mlp };

ClassifierKind parse_classifier_kind(const std::string& name);
const char* classifier_kind_name(ClassifierKind kind);

struct ClassifierSpec {
    ClassifierKind kind = ClassifierKind::Lda;
    int mlp_hidden = 9;
    double mlp_lr = 0.1;
    int mlp_epochs = 2000;
    std::uint64_t seed = 1;
};

// LDA and MLP see standardized inputs; NB sees raw counts. The trained
// bundle carries whatever standardization it was fit with.
struct TrainedClassifier {
    ClassifierSpec spec;
    StandardizationParams standardizer;  // identity for NB
    std::variant<LdaModel, NbModel, MlpModel> model;
};

TrainedClassifier train_classifier(const Dataset& train,
                                   const ClassifierSpec& spec);
std::pair<Label, double> classify(const TrainedClassifier& trained,
                                  std::span<const double> x);

// Versioned plain-text model format for inspection and diffing.
void save_model(const TrainedClassifier& trained,
                const std::filesystem::path& path);
TrainedClassifier load_model(const std::filesystem::path& path);

}  // namespace chfsodp

#endif
