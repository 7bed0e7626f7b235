#include "chfsodp/classifiers.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "chfsodp/errors.hpp"
#include "chfsodp/rng.hpp"
#include "chfsodp/textio.hpp"

namespace chfsodp {

namespace {

double sigmoid(double z) {
    if (z >= 0.0) {
        return 1.0 / (1.0 + std::exp(-z));
    }
    const double e = std::exp(z);
    return e / (1.0 + e);
}

// log(1 + e^z) without overflow.
double softplus(double z) {
    if (z > 0.0) return z + std::log1p(std::exp(-z));
    return std::log1p(std::exp(z));
}

// Cholesky solve of the symmetric positive-definite system A x = b.
// Throws SingularCovariance when A is not positive definite.
std::vector<double> spd_solve(std::vector<double> a, std::vector<double> b,
                              std::size_t n) {
    for (std::size_t j = 0; j < n; ++j) {
        double diag = a[j * n + j];
        for (std::size_t k = 0; k < j; ++k) {
            diag -= a[j * n + k] * a[j * n + k];
        }
        if (!(diag > 0.0) || !std::isfinite(diag)) throw SingularCovariance();
        const double root = std::sqrt(diag);
        a[j * n + j] = root;
        for (std::size_t i = j + 1; i < n; ++i) {
            double v = a[i * n + j];
            for (std::size_t k = 0; k < j; ++k) {
                v -= a[i * n + k] * a[j * n + k];
            }
            a[i * n + j] = v / root;
        }
    }
    // Forward then backward substitution with the factor L (A = L L^T).
    for (std::size_t i = 0; i < n; ++i) {
        double v = b[i];
        for (std::size_t k = 0; k < i; ++k) v -= a[i * n + k] * b[k];
        b[i] = v / a[i * n + i];
    }
    for (std::size_t ii = n; ii > 0; --ii) {
        const std::size_t i = ii - 1;
        double v = b[i];
        for (std::size_t k = i + 1; k < n; ++k) v -= a[k * n + i] * b[k];
        b[i] = v / a[i * n + i];
    }
    return b;
}

void check_both_classes(const Dataset& train) {
    bool has_chf = false, has_normal = false;
    for (Label l : train.labels) {
        (l == Label::Chf ? has_chf : has_normal) = true;
    }
    if (!has_chf || !has_normal) {
        throw Error("training set must contain both classes");
    }
}

std::vector<double> class_mean(const Dataset& data, Label label) {
    std::vector<double> mean(data.dim(), 0.0);
    std::size_t count = 0;
    for (std::size_t i = 0; i < data.size(); ++i) {
        if (data.labels[i] != label) continue;
        ++count;
        for (std::size_t j = 0; j < mean.size(); ++j) {
            mean[j] += data.features[i][j];
        }
    }
    for (double& m : mean) m /= static_cast<double>(count);
    return mean;
}

}  // namespace

Dataset dataset_from_rows(const std::vector<FeatureRow>& rows) {
    Dataset data;
    data.features.reserve(rows.size());
    data.labels.reserve(rows.size());
    data.subject_ids.reserve(rows.size());
    for (const auto& row : rows) {
        std::vector<double> x(row.features.size());
        for (std::size_t i = 0; i < x.size(); ++i) {
            x[i] = static_cast<double>(row.features[i]);
        }
        data.features.push_back(std::move(x));
        data.labels.push_back(row.label);
        data.subject_ids.push_back(row.subject_id);
    }
    return data;
}

StandardizationParams standardize_fit(const Dataset& train) {
    if (train.size() < 2) throw TooFewRows(train.size());
    const std::size_t d = train.dim();
    const double n = static_cast<double>(train.size());

    StandardizationParams params;
    params.mean.assign(d, 0.0);
    params.stddev.assign(d, 0.0);
    for (const auto& row : train.features) {
        for (std::size_t j = 0; j < d; ++j) params.mean[j] += row[j];
    }
    for (double& m : params.mean) m /= n;
    for (const auto& row : train.features) {
        for (std::size_t j = 0; j < d; ++j) {
            const double delta = row[j] - params.mean[j];
            params.stddev[j] += delta * delta;
        }
    }
    for (double& s : params.stddev) {
        s = std::sqrt(s / n);  // population deviation
        if (s == 0.0) s = 1.0;
    }
    return params;
}

std::vector<double> standardize_apply(const StandardizationParams& params,
                                      std::span<const double> x) {
    std::vector<double> out(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) {
        out[j] = (x[j] - params.mean[j]) / params.stddev[j];
    }
    return out;
}

Dataset standardize_apply(const StandardizationParams& params,
                          const Dataset& data) {
    Dataset out = data;
    for (auto& row : out.features) {
        row = standardize_apply(params, row);
    }
    return out;
}

// ---- LDA ----

LdaModel lda_train(const Dataset& train) {
    check_both_classes(train);
    const std::size_t d = train.dim();
    const std::size_t n = train.size();

    const std::vector<double> mean_chf = class_mean(train, Label::Chf);
    const std::vector<double> mean_normal = class_mean(train, Label::Normal);

    // Pooled within-class covariance (population normalization).
    std::vector<double> cov(d * d, 0.0);
    std::size_t n_chf = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const auto& mu = train.labels[i] == Label::Chf ? mean_chf : mean_normal;
        if (train.labels[i] == Label::Chf) ++n_chf;
        for (std::size_t a = 0; a < d; ++a) {
            const double da = train.features[i][a] - mu[a];
            for (std::size_t b = a; b < d; ++b) {
                cov[a * d + b] += da * (train.features[i][b] - mu[b]);
            }
        }
    }
    for (std::size_t a = 0; a < d; ++a) {
        for (std::size_t b = a; b < d; ++b) {
            cov[a * d + b] /= static_cast<double>(n);
            cov[b * d + a] = cov[a * d + b];
        }
    }

    // Ridge at 1e-6 of the mean diagonal keeps near-singular folds solvable.
    double mean_diag = 0.0;
    for (std::size_t a = 0; a < d; ++a) mean_diag += cov[a * d + a];
    mean_diag /= static_cast<double>(d);
    const double ridge = 1e-6 * mean_diag;
    for (std::size_t a = 0; a < d; ++a) cov[a * d + a] += ridge;

    std::vector<double> diff(d);
    for (std::size_t j = 0; j < d; ++j) diff[j] = mean_chf[j] - mean_normal[j];

    LdaModel model;
    model.weight = spd_solve(std::move(cov), std::move(diff), d);

    // Boundary at the midpoint of the projected class means, shifted by the
    // log prior ratio.
    double mid = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
        mid += model.weight[j] * 0.5 * (mean_chf[j] + mean_normal[j]);
    }
    const double prior_chf = static_cast<double>(n_chf) / static_cast<double>(n);
    model.bias = -mid + std::log(prior_chf / (1.0 - prior_chf));
    return model;
}

std::pair<Label, double> lda_predict(const LdaModel& model,
                                     std::span<const double> x) {
    double score = model.bias;
    for (std::size_t j = 0; j < x.size(); ++j) score += model.weight[j] * x[j];
    // Strict-positive rule: a score of exactly zero is Normal.
    return {score > 0.0 ? Label::Chf : Label::Normal, score};
}

// ---- naive Bayes ----

NbModel nb_train(const Dataset& train) {
    if (train.size() < 2) throw TooFewRows(train.size());
    check_both_classes(train);
    const std::size_t d = train.dim();

    NbModel model;
    model.mean_chf = class_mean(train, Label::Chf);
    model.mean_normal = class_mean(train, Label::Normal);
    model.var_chf.assign(d, 0.0);
    model.var_normal.assign(d, 0.0);

    std::size_t n_chf = 0, n_normal = 0;
    for (std::size_t i = 0; i < train.size(); ++i) {
        const bool chf = train.labels[i] == Label::Chf;
        auto& var = chf ? model.var_chf : model.var_normal;
        const auto& mu = chf ? model.mean_chf : model.mean_normal;
        (chf ? n_chf : n_normal)++;
        for (std::size_t j = 0; j < d; ++j) {
            const double delta = train.features[i][j] - mu[j];
            var[j] += delta * delta;
        }
    }
    for (double& v : model.var_chf) v /= static_cast<double>(n_chf);
    for (double& v : model.var_normal) v /= static_cast<double>(n_normal);

    // Variance floor relative to the largest per-feature variance in the
    // whole training set.
    std::vector<double> global_mean(d, 0.0);
    for (const auto& row : train.features) {
        for (std::size_t j = 0; j < d; ++j) global_mean[j] += row[j];
    }
    for (double& m : global_mean) m /= static_cast<double>(train.size());
    double max_var = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
        double v = 0.0;
        for (const auto& row : train.features) {
            const double delta = row[j] - global_mean[j];
            v += delta * delta;
        }
        max_var = std::max(max_var, v / static_cast<double>(train.size()));
    }
    double floor = 1e-9 * max_var;
    if (floor <= 0.0) floor = 1e-9;
    for (double& v : model.var_chf) v = std::max(v, floor);
    for (double& v : model.var_normal) v = std::max(v, floor);

    model.prior_chf =
        static_cast<double>(n_chf) / static_cast<double>(train.size());
    model.prior_normal = 1.0 - model.prior_chf;
    return model;
}

std::pair<Label, double> nb_predict(const NbModel& model,
                                    std::span<const double> x) {
    const double log_2pi = std::log(2.0 * M_PI);
    double log_chf = std::log(model.prior_chf);
    double log_normal = std::log(model.prior_normal);
    for (std::size_t j = 0; j < x.size(); ++j) {
        double delta = x[j] - model.mean_chf[j];
        log_chf -= 0.5 * (log_2pi + std::log(model.var_chf[j]) +
                          delta * delta / model.var_chf[j]);
        delta = x[j] - model.mean_normal[j];
        log_normal -= 0.5 * (log_2pi + std::log(model.var_normal[j]) +
                             delta * delta / model.var_normal[j]);
    }
    // Stable normalization in the log domain.
    const double top = std::max(log_chf, log_normal);
    const double denom = std::exp(log_chf - top) + std::exp(log_normal - top);
    const double posterior = std::exp(log_chf - top) / denom;
    return {posterior >= 0.5 ? Label::Chf : Label::Normal, posterior};
}

// ---- MLP ----

std::size_t MlpModel::parameter_count() const {
    return static_cast<std::size_t>(hidden) * static_cast<std::size_t>(input_dim) +
           static_cast<std::size_t>(hidden) * 2 + 1;
}

MlpModel mlp_init(int input_dim, int hidden, std::uint64_t seed) {
    MlpModel model;
    model.input_dim = input_dim;
    model.hidden = hidden;
    model.w1.resize(static_cast<std::size_t>(hidden) *
                    static_cast<std::size_t>(input_dim));
    model.b1.resize(static_cast<std::size_t>(hidden));
    model.w2.resize(static_cast<std::size_t>(hidden));

    Rng rng(seed);
    for (double& w : model.w1) w = rng.uniform(-0.5, 0.5);
    for (double& b : model.b1) b = rng.uniform(-0.5, 0.5);
    for (double& w : model.w2) w = rng.uniform(-0.5, 0.5);
    model.b2 = rng.uniform(-0.5, 0.5);
    return model;
}

double mlp_loss_and_gradient(const MlpModel& model, const Dataset& data,
                             MlpModel* gradient) {
    const std::size_t n = data.size();
    const std::size_t d = static_cast<std::size_t>(model.input_dim);
    const std::size_t h = static_cast<std::size_t>(model.hidden);

    if (gradient != nullptr) {
        gradient->input_dim = model.input_dim;
        gradient->hidden = model.hidden;
        gradient->w1.assign(model.w1.size(), 0.0);
        gradient->b1.assign(model.b1.size(), 0.0);
        gradient->w2.assign(model.w2.size(), 0.0);
        gradient->b2 = 0.0;
    }

    double loss = 0.0;
    std::vector<double> hidden_out(h);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& x = data.features[i];
        const double y = data.labels[i] == Label::Chf ? 1.0 : 0.0;

        for (std::size_t j = 0; j < h; ++j) {
            double z = model.b1[j];
            const double* wrow = &model.w1[j * d];
            for (std::size_t k = 0; k < d; ++k) z += wrow[k] * x[k];
            hidden_out[j] = sigmoid(z);
        }
        double z_out = model.b2;
        for (std::size_t j = 0; j < h; ++j) z_out += model.w2[j] * hidden_out[j];

        // Cross-entropy written on the logit so extreme outputs stay finite:
        // -(y log o + (1-y) log(1-o)) = y softplus(-z) + (1-y) softplus(z).
        loss += y * softplus(-z_out) + (1.0 - y) * softplus(z_out);

        if (gradient != nullptr) {
            const double dz = sigmoid(z_out) - y;
            gradient->b2 += dz;
            for (std::size_t j = 0; j < h; ++j) {
                gradient->w2[j] += dz * hidden_out[j];
                const double dpre =
                    dz * model.w2[j] * hidden_out[j] * (1.0 - hidden_out[j]);
                gradient->b1[j] += dpre;
                double* grow = &gradient->w1[j * d];
                for (std::size_t k = 0; k < d; ++k) grow[k] += dpre * x[k];
            }
        }
    }

    const double inv_n = 1.0 / static_cast<double>(n);
    if (gradient != nullptr) {
        for (double& g : gradient->w1) g *= inv_n;
        for (double& g : gradient->b1) g *= inv_n;
        for (double& g : gradient->w2) g *= inv_n;
        gradient->b2 *= inv_n;
    }
    return loss * inv_n;
}

MlpModel mlp_train(const Dataset& train, int hidden, double learning_rate,
                   int epochs, std::uint64_t seed) {
    if (hidden < 1) throw BadHyperparameter("hidden size must be >= 1");
    if (!(learning_rate > 0.0)) throw BadHyperparameter("learning rate must be > 0");
    if (epochs < 0) throw BadHyperparameter("epochs must be >= 0");
    if (train.size() == 0) throw TooFewRows(0);

    MlpModel model = mlp_init(static_cast<int>(train.dim()), hidden, seed);
    MlpModel gradient;
    for (int epoch = 0; epoch < epochs; ++epoch) {
        mlp_loss_and_gradient(model, train, &gradient);
        for (std::size_t i = 0; i < model.w1.size(); ++i) {
            model.w1[i] -= learning_rate * gradient.w1[i];
        }
        for (std::size_t i = 0; i < model.b1.size(); ++i) {
            model.b1[i] -= learning_rate * gradient.b1[i];
        }
        for (std::size_t i = 0; i < model.w2.size(); ++i) {
            model.w2[i] -= learning_rate * gradient.w2[i];
        }
        model.b2 -= learning_rate * gradient.b2;
    }
    return model;
}

std::pair<Label, double> mlp_predict(const MlpModel& model,
                                     std::span<const double> x) {
    const std::size_t d = static_cast<std::size_t>(model.input_dim);
    const std::size_t h = static_cast<std::size_t>(model.hidden);
    double z_out = model.b2;
    for (std::size_t j = 0; j < h; ++j) {
        double z = model.b1[j];
        const double* wrow = &model.w1[j * d];
        for (std::size_t k = 0; k < d; ++k) z += wrow[k] * x[k];
        z_out += model.w2[j] * sigmoid(z);
    }
    const double prob = sigmoid(z_out);
    return {prob >= 0.5 ? Label::Chf : Label::Normal, prob};
}

// ---- unified front end ----

ClassifierKind parse_classifier_kind(const std::string& name) {
    if (name == "lda") return ClassifierKind::Lda;
    if (name == "nb") return ClassifierKind::Nb;
    if (name == "mlp") return ClassifierKind::Mlp;
    throw ConfigError("unknown classifier: " + name);
}

const char* classifier_kind_name(ClassifierKind kind) {
    switch (kind) {
        case ClassifierKind::Lda: return "lda";
        case ClassifierKind::Nb: return "nb";
        case ClassifierKind::Mlp: return "mlp";
    }
    return "?";
}

TrainedClassifier train_classifier(const Dataset& train,
                                   const ClassifierSpec& spec) {
    TrainedClassifier out;
    out.spec = spec;
    if (spec.kind == ClassifierKind::Nb) {
        // Raw counts; identity standardizer.
        out.standardizer.mean.assign(train.dim(), 0.0);
        out.standardizer.stddev.assign(train.dim(), 1.0);
        out.model = nb_train(train);
        return out;
    }
    out.standardizer = standardize_fit(train);
    const Dataset standardized = standardize_apply(out.standardizer, train);
    if (spec.kind == ClassifierKind::Lda) {
        out.model = lda_train(standardized);
    } else {
        out.model = mlp_train(standardized, spec.mlp_hidden, spec.mlp_lr,
                              spec.mlp_epochs, spec.seed);
    }
    return out;
}

std::pair<Label, double> classify(const TrainedClassifier& trained,
                                  std::span<const double> x) {
    const std::vector<double> z = standardize_apply(trained.standardizer, x);
    if (const auto* lda = std::get_if<LdaModel>(&trained.model)) {
        return lda_predict(*lda, z);
    }
    if (const auto* nb = std::get_if<NbModel>(&trained.model)) {
        return nb_predict(*nb, z);
    }
    return mlp_predict(std::get<MlpModel>(trained.model), z);
}

// ---- model persistence ----

namespace {

void write_vector(std::string& out, const char* key,
                  const std::vector<double>& v) {
    out += key;
    for (double x : v) {
        out += ' ';
        out += format_double(x);
    }
    out += '\n';
}

std::vector<double> parse_vector(const std::string& line, const char* key) {
    std::istringstream in(line);
    std::string head;
    in >> head;
    if (head != key) throw ParseError("model", 0, std::string("expected ") + key);
    std::vector<double> v;
    std::string token;
    while (in >> token) {
        double x = 0.0;
        if (!parse_double(token, x)) throw ParseError("model", 0, "bad number");
        v.push_back(x);
    }
    return v;
}

}  // namespace

void save_model(const TrainedClassifier& trained,
                const std::filesystem::path& path) {
    std::string out = "chfsodp-model 1\n";
    out += "kind ";
    out += classifier_kind_name(trained.spec.kind);
    out += '\n';
    write_vector(out, "standardizer_mean", trained.standardizer.mean);
    write_vector(out, "standardizer_stddev", trained.standardizer.stddev);

    if (const auto* lda = std::get_if<LdaModel>(&trained.model)) {
        write_vector(out, "weight", lda->weight);
        out += "bias " + format_double(lda->bias) + '\n';
    } else if (const auto* nb = std::get_if<NbModel>(&trained.model)) {
        out += "priors " + format_double(nb->prior_chf) + ' ' +
               format_double(nb->prior_normal) + '\n';
        write_vector(out, "mean_chf", nb->mean_chf);
        write_vector(out, "var_chf", nb->var_chf);
        write_vector(out, "mean_normal", nb->mean_normal);
        write_vector(out, "var_normal", nb->var_normal);
    } else {
        const auto& mlp = std::get<MlpModel>(trained.model);
        out += "arch " + std::to_string(mlp.input_dim) + ' ' +
               std::to_string(mlp.hidden) + '\n';
        write_vector(out, "w1", mlp.w1);
        write_vector(out, "b1", mlp.b1);
        write_vector(out, "w2", mlp.w2);
        out += "b2 " + format_double(mlp.b2) + '\n';
    }
    write_file(path, out);
}

TrainedClassifier load_model(const std::filesystem::path& path) {
    std::istringstream in(read_file(path));
    std::string line;
    if (!std::getline(in, line) || line != "chfsodp-model 1") {
        throw ParseError(path.string(), 1, "bad model header");
    }
    if (!std::getline(in, line) || line.rfind("kind ", 0) != 0) {
        throw ParseError(path.string(), 2, "missing kind");
    }
    TrainedClassifier trained;
    trained.spec.kind = parse_classifier_kind(line.substr(5));

    std::getline(in, line);
    trained.standardizer.mean = parse_vector(line, "standardizer_mean");
    std::getline(in, line);
    trained.standardizer.stddev = parse_vector(line, "standardizer_stddev");

    if (trained.spec.kind == ClassifierKind::Lda) {
        LdaModel lda;
        std::getline(in, line);
        lda.weight = parse_vector(line, "weight");
        std::getline(in, line);
        lda.bias = parse_vector(line, "bias").at(0);
        trained.model = std::move(lda);
    } else if (trained.spec.kind == ClassifierKind::Nb) {
        NbModel nb;
        std::getline(in, line);
        const auto priors = parse_vector(line, "priors");
        nb.prior_chf = priors.at(0);
        nb.prior_normal = priors.at(1);
        std::getline(in, line);
        nb.mean_chf = parse_vector(line, "mean_chf");
        std::getline(in, line);
        nb.var_chf = parse_vector(line, "var_chf");
        std::getline(in, line);
        nb.mean_normal = parse_vector(line, "mean_normal");
        std::getline(in, line);
        nb.var_normal = parse_vector(line, "var_normal");
        trained.model = std::move(nb);
    } else {
        MlpModel mlp;
        std::getline(in, line);
        const auto arch = parse_vector(line, "arch");
        mlp.input_dim = static_cast<int>(arch.at(0));
        mlp.hidden = static_cast<int>(arch.at(1));
        std::getline(in, line);
        mlp.w1 = parse_vector(line, "w1");
        std::getline(in, line);
        mlp.b1 = parse_vector(line, "b1");
        std::getline(in, line);
        mlp.w2 = parse_vector(line, "w2");
        std::getline(in, line);
        mlp.b2 = parse_vector(line, "b2").at(0);
        trained.model = std::move(mlp);
    }
    return trained;
}

}  // namespace chfsodp
