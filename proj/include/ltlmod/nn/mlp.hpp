#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "ltlmod/util/rng.hpp"

namespace ltlmod {

// Dense tanh network in double precision.  The output head is either raw
// (critics) or squashed per-dimension into declared bounds (actors):
// y_i = lo_i + (tanh(z_i)+1)/2 * (hi_i - lo_i).
class Mlp {
public:
    enum class Head { identity, bounded };

    Mlp() = default;
    // sizes = {in, hidden..., out}
    Mlp(std::vector<int> sizes, Head head, std::vector<double> head_lo,
        std::vector<double> head_hi);

    static Mlp xavier(std::vector<int> sizes, Head head, std::vector<double> head_lo,
                      std::vector<double> head_hi, Rng& rng);

    int input_dim() const { return sizes_.front(); }
    int output_dim() const { return sizes_.back(); }
    int num_layers() const { return static_cast<int>(w_.size()); }
    const std::vector<int>& sizes() const { return sizes_; }
    Head head() const { return head_; }

    struct Workspace {
        std::vector<std::vector<double>> pre;  // z per layer
        std::vector<std::vector<double>> act;  // input + activation per layer
        std::vector<double> scratch;
    };

    // Returns the output (stored in the workspace).  The cached activations
    // feed backward().
    const std::vector<double>& forward(const std::vector<double>& input, Workspace& ws) const;

    struct Grad {
        std::vector<std::vector<double>> w, b;
        void zero();
    };
    Grad make_grad() const;

    // Reverse-mode pass for the forward cached in `ws`.  Accumulates
    // parameter gradients into `grad` (skipped when null); when `dinput` is
    // non-null also yields d(loss)/d(input), the path the policy update
    // needs through the critic's action slot.
    void backward(const Workspace& ws, const std::vector<double>& doutput, Grad* grad,
                  std::vector<double>* dinput = nullptr) const;

    bool same_architecture(const Mlp& o) const;

    // weights exposed for the optimizer / soft updates
    std::vector<std::vector<double>>& weights() { return w_; }
    std::vector<std::vector<double>>& biases() { return b_; }
    const std::vector<std::vector<double>>& weights() const { return w_; }
    const std::vector<std::vector<double>>& biases() const { return b_; }

    void save(const std::string& path) const;
    static Mlp load(const std::string& path);

    bool finite() const;

private:
    std::vector<int> sizes_;
    std::vector<std::vector<double>> w_; // row-major [out x in] per layer
    std::vector<std::vector<double>> b_;
    Head head_ = Head::identity;
    std::vector<double> head_lo_, head_hi_;
};

// target <- tau*source + (1-tau)*target, all parameters
void soft_update(Mlp& target, const Mlp& source, double tau);

struct AdamParams {
    double lr = 1e-3;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
};

class Adam {
public:
    Adam() = default;
    Adam(const Mlp& net, AdamParams params);
    void step(Mlp& net, const Mlp::Grad& grad);
    int64_t steps_taken() const { return t_; }

private:
    AdamParams p_;
    std::vector<std::vector<double>> mw_, vw_, mb_, vb_;
    int64_t t_ = 0;
};

class WeightIoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace ltlmod
