// Corpora include hostile pages, so representative fragments are reduced to
// inert display markup before they touch the DOM: dangerous elements vanish
// with their content, unknown tags are unwrapped to their text, and the only
// attributes that survive are the span counts a table needs for layout.

const DROP_WITH_CONTENT = ['script', 'style', 'iframe', 'object', 'embed', 'noscript', 'template'];

const ALLOWED_TAGS = new Set([
  'table', 'thead', 'tbody', 'tfoot', 'tr', 'td', 'th', 'caption',
  'a', 'b', 'i', 'em', 'strong', 'u', 's', 'small', 'sub', 'sup',
  'p', 'br', 'hr', 'span', 'div', 'ul', 'ol', 'li', 'img',
  'h1', 'h2', 'h3', 'h4', 'h5', 'h6', 'blockquote', 'pre', 'code', 'font',
]);

const SPAN_ATTRS = /(?:^|\s)(colspan|rowspan)\s*=\s*("[^"]*"|'[^']*'|\d+)/gi;

function rebuildTag(raw: string, closing: string, name: string, attrs: string): string {
  const tag = name.toLowerCase();
  if (!ALLOWED_TAGS.has(tag)) {
    return '';
  }
  if (closing) {
    return `</${tag}>`;
  }
  let kept = '';
  if (tag === 'td' || tag === 'th') {
    // span counts are the only attributes that affect what the label
    // decision is about (the table's shape); everything else is dropped,
    // which also removes event handlers and external loads
    for (const match of attrs.matchAll(SPAN_ATTRS)) {
      const value = match[2].replace(/['"]/g, '');
      if (/^\d+$/.test(value)) {
        kept += ` ${match[1].toLowerCase()}="${value}"`;
      }
    }
  }
  return `<${tag}${kept}>`;
}

export function sanitizeTableHtml(html: string): string {
  if (!html) {
    return '';
  }
  let out = html.replace(/<!--[\s\S]*?-->/g, '');
  for (const tag of DROP_WITH_CONTENT) {
    out = out.replace(new RegExp(`<${tag}\\b[^>]*>[\\s\\S]*?<\\/${tag}\\s*>`, 'gi'), '');
    out = out.replace(new RegExp(`<\\/?${tag}\\b[^>]*>`, 'gi'), '');
  }
  out = out.replace(
    /<\s*(\/?)\s*([a-zA-Z][a-zA-Z0-9-]*)((?:"[^"]*"|'[^']*'|[^'">])*)>/g,
    (raw, closing, name, attrs) => rebuildTag(raw, closing, name, attrs),
  );
  return out;
}

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, '&amp;')
    .replace(/</g, '&lt;')
    .replace(/>/g, '&gt;')
    .replace(/"/g, '&quot;');
}
