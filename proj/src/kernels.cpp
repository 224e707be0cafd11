// Runtime kernel selection.

#include "qrc/kernels.hpp"

#include "kernels_detail.hpp"
#include "qrc/errors.hpp"

namespace qrc::kernels {

namespace {

const Ops scalar_table = {
    "scalar",
    scalar_impl::axpy,
    scalar_impl::axpy_re,
    scalar_impl::scal_re,
    scalar_impl::csr_mul_acc,
    scalar_impl::csr_rdag_mul_acc,
    scalar_impl::acc_plus_adjoint,
    scalar_impl::hermitize,
};

bool cpu_supports_avx2() {
#if defined(__x86_64__) || defined(_M_X64)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

const Ops* detect_avx2() {
    const Ops* t = avx2_impl::table();
    if (t != nullptr && cpu_supports_avx2()) return t;
    return nullptr;
}

const Ops*& active_slot() {
    static const Ops* slot = [] {
        if (const Ops* t = detect_avx2()) return t;
        return &scalar_table;
    }();
    return slot;
}

} // namespace

const Ops& scalar() { return scalar_table; }

const Ops* avx2() { return detect_avx2(); }

const Ops& active() { return *active_slot(); }

void select(const std::string& name) {
    if (name == "auto") {
        active_slot() = detect_avx2() ? detect_avx2() : &scalar_table;
    } else if (name == "scalar") {
        active_slot() = &scalar_table;
    } else if (name == "avx2") {
        const Ops* t = detect_avx2();
        if (t == nullptr) throw ConfigError("avx2 kernels unavailable on this CPU/build");
        active_slot() = t;
    } else {
        throw ConfigError("unknown kernel set '" + name + "' (auto|scalar|avx2)");
    }
}

std::vector<std::string> available() {
    std::vector<std::string> out{"scalar"};
    if (detect_avx2() != nullptr) out.emplace_back("avx2");
    return out;
}

} // namespace qrc::kernels
