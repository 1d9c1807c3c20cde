#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "stereocolor/idt.hpp"
#include "stereocolor/metrics.hpp"

namespace stereocolor {

enum class MethodType { Global, Local };

std::string_view to_string(MethodType type);

struct MethodInfo {
    std::string name;   // CLI token
    MethodType type;
    std::string label;  // human-readable name for reports
};

/// reinhard, xiao, pitie-cholesky, pitie-sqrt, pitie-mk, pitie-idt, in that order.
const std::vector<MethodInfo>& registered_methods();

/// Throws InvalidArgument listing the valid names.
const MethodInfo& method_info(std::string_view name);

struct MethodOptions {
    IdtConfig idt;
};

/// The correction for a registered name; errors from the method propagate on call.
CorrectionFn make_method(std::string_view name, const MethodOptions& options = {});

/// Splits a comma-separated list and validates every name.
std::vector<std::string> parse_method_list(std::string_view list);

}  // namespace stereocolor
