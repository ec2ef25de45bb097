// A page exactly as the engine renders it (three brackets, one with an
// escaped unit id), captured for parser tests.

export const ENGINE_PAGE = `<!DOCTYPE html>
<html lang="en">
<head>
<meta charset="utf-8"/>
<title>Grid page</title>
<style>
body { margin: 0; font-family: system-ui, sans-serif; }
.board-grid { display: grid; grid-template-rows: repeat(16, 60px); grid-template-columns: repeat(12, 60px); }
.bracket { overflow: hidden; }
.bracket h1 { margin: 0; font-size: 28px; }
.bracket p { margin: 0; }
.bracket img, .bracket video { width: 100%; height: 100%; object-fit: contain; }
.media-placeholder { width: 100%; height: 100%; display: flex; align-items: center; justify-content: center; background: #eee; color: #555; }
</style>
</head>
<body>
<main class="board-grid" data-rows="16" data-cols="12">
<section class="bracket bracket-video" data-unit="clip" style="grid-row: 4 / span 4; grid-column: 6 / span 6;"></section>
<section class="bracket bracket-image" data-unit="pic &quot;one&quot;" style="grid-row: 4 / span 3; grid-column: 1 / span 4;"><img src="media/pier.jpg" alt="The old pier"/></section>
<section class="bracket bracket-text" data-unit="title" style="grid-row: 1 / span 2; grid-column: 3 / span 8;"><h1>Welcome to my lovely hometown island!</h1></section>
</main>
</body>
</html>
`

export const EMPTY_PAGE = ENGINE_PAGE.replace(/<section[\s\S]*<\/section>\n/, "")
