#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rcop/cone.hpp"
#include "rcop/graph.hpp"
#include "rcop/invariant_space.hpp"
#include "rcop/linalg.hpp"
#include "rcop/realization.hpp"
#include "rcop/registry.hpp"

namespace rcop {

/// Diaconis-Ylvisaker prior hyperparameters: shape delta > 2, scale D > 0.
struct Hyperparams {
    double delta = 3.0;
    MatrixXd D;

    /// Throws IntegrabilityError / DomainError on invalid values.
    void validate() const;
};

struct DataSummary {
    MatrixXd scatter;  // sum of Z_i Z_i^T, after centering when requested
    int n_effective = 0;
    int n_raw = 0;
    bool centered = false;
};

/// Scatter of the rows; centering subtracts column means and drops one
/// degree of freedom.
DataSummary summarize_data(const MatrixXd& rows, bool center);

/// The 5x5 exam-marks scatter matrix (88 students, centered, 87 d.o.f.).
DataSummary exam_marks_fixture();

/// A candidate model: one distinct invariant space, optionally realized.
struct Model {
    std::string id;
    std::vector<std::string> merged_labels;
    InvariantSpace<double> space;
    std::optional<Realization<double>> realization;
};

enum class EvaluationPath { fast, numeric };

/// log of the prior normalizing constant
/// log gamma((delta-2)/2) + log phi(pi(D)/2) - (delta-2)/2 log delta(pi(D)/2).
double log_I(const Model& model, double delta, const MatrixXd& D,
             EvaluationPath path = EvaluationPath::fast, const PsiOptions<double>& newton = {});

struct ModelScore {
    std::string model_id;
    std::vector<std::string> merged_labels;
    int dim = 0;
    double log_I_prior = 0;
    double log_I_posterior = 0;
    double log_score = 0;
    double probability = 0;
};

struct SelectionReport {
    std::vector<ModelScore> models;
    std::string winner;
    const ModelScore& best() const;
};

/// Posterior over the supplied models under a uniform prior; each model is
/// scored by log I(delta + n, D + S) - log I(delta, D).
SelectionReport posterior(const std::vector<Model>& models, const DataSummary& data,
                          const Hyperparams& h, EvaluationPath path = EvaluationPath::fast,
                          const PsiOptions<double>& newton = {});

/// psi(pi(S / n)): the Gaussian maximum-likelihood concentration in the model.
MatrixXd fit_concentration(const Model& model, const DataSummary& data,
                           const PsiOptions<double>& newton = {});

/// Subgroups of Aut(g), merged by coinciding space, labelled and realized
/// from the registry when it covers g. Requires a homogeneous graph.
std::vector<Model> candidate_models(const Graph& g, const Registry* registry);

/// Model for an explicit group (no merging).
Model make_model(const Graph& g, const PermutationGroup& group, std::string id,
                 const Registry* registry);

}  // namespace rcop
