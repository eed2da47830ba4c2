// Prompt asset loading and {{variable}} template rendering.
#pragma once

#include <map>
#include <string>

#include "scout/result.hpp"

namespace scout {

// Replace every {{name}} placeholder (surrounding spaces inside the braces
// are tolerated).  Referencing a variable that was not supplied is an error;
// supplying unused variables is fine.
Result<std::string> render_template(const std::string& tmpl,
                                    const std::map<std::string, std::string>& vars);

// Read <prompt_dir>/<name>.txt.
Result<std::string> load_prompt(const std::string& prompt_dir, const std::string& name);

Result<std::string> render_prompt(const std::string& prompt_dir, const std::string& name,
                                  const std::map<std::string, std::string>& vars);

}  // namespace scout
